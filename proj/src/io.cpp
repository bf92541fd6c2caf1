#include "cmms/io.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "cmms/errors.hpp"

namespace cmms::io {

namespace {

using json = nlohmann::json;

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw InvalidInput(where + ": " + what);
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        // The message already names line and column; add the offending line.
        const std::size_t stop = std::min<std::size_t>(e.byte > 0 ? e.byte - 1 : 0, text.size());
        std::size_t begin = stop;
        while (begin > 0 && text[begin - 1] != '\n') --begin;
        const std::size_t end = text.find('\n', begin);
        const std::string_view context = text.substr(begin, end == std::string_view::npos ? end : end - begin);
        throw InvalidInput(std::string(e.what()) + "\n  " + std::string(context));
    }
}

Value value_of(const json& j, const std::string& where) {
    if (j.is_number_integer()) return Value(j.get<std::int64_t>());
    if (j.is_number_unsigned()) return Value::parse(std::to_string(j.get<std::uint64_t>()));
    if (j.is_string()) {
        try {
            return Value::parse(j.get<std::string>());
        } catch (const InvalidInput& e) {
            bad(where, e.what());
        }
    }
    bad(where, "expected an integer or a \"p/q\" string");
}

const json& field(const json& obj, const char* key, const std::string& where) {
    if (!obj.is_object()) bad(where, "expected an object");
    auto it = obj.find(key);
    if (it == obj.end()) bad(where, std::string("missing \"") + key + "\"");
    return *it;
}

std::string string_of(const json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

AgentId agent_id_of(const json& j, const std::string& where) {
    if (!j.is_number_integer()) bad(where, "expected an integer agent id");
    return j.get<AgentId>();
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

} // namespace

InstanceFile parse_instance(std::string_view text) {
    const json doc = parse_json(text);
    const json& graph = field(doc, "graph", "$");
    const json& vertices = field(graph, "vertices", "graph");
    if (!vertices.is_array()) bad("graph.vertices", "expected an array");
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < vertices.size(); ++i)
        ids.push_back(string_of(vertices[i], "graph.vertices[" + std::to_string(i) + "]"));

    std::vector<std::pair<std::string, std::string>> edges;
    if (graph.contains("edges")) {
        const json& es = graph["edges"];
        if (!es.is_array()) bad("graph.edges", "expected an array");
        for (std::size_t i = 0; i < es.size(); ++i) {
            const std::string where = "graph.edges[" + std::to_string(i) + "]";
            if (!es[i].is_array() || es[i].size() != 2) bad(where, "expected a pair of vertex ids");
            edges.emplace_back(string_of(es[i][0], where), string_of(es[i][1], where));
        }
    }

    InstanceFile out;
    out.instance.graph = GoodsGraph(ids, edges);
    const GoodsGraph& g = out.instance.graph;

    const json& agents = field(doc, "agents", "$");
    if (!agents.is_array()) bad("agents", "expected an array");
    std::vector<std::pair<Agent, std::string>> parsed;
    std::set<AgentId> seen;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const std::string where = "agents[" + std::to_string(i) + "]";
        const json& a = agents[i];
        Agent agent;
        agent.id = agent_id_of(field(a, "id", where), where + ".id");
        if (!seen.insert(agent.id).second) bad(where, "duplicate agent id " + std::to_string(agent.id));
        std::string type = a.contains("type") ? string_of(a["type"], where + ".type") : std::to_string(agent.id);
        agent.utility.assign(g.size(), Value(0));
        if (a.contains("utilities")) {
            const json& u = a["utilities"];
            if (!u.is_object()) bad(where + ".utilities", "expected an object keyed by vertex id");
            for (const auto& [key, val] : u.items()) {
                if (!g.contains(key)) bad(where + ".utilities", "unknown vertex '" + key + "'");
                agent.utility[g.index_of(key)] = value_of(val, where + ".utilities." + key);
            }
        }
        parsed.emplace_back(std::move(agent), std::move(type));
    }
    std::sort(parsed.begin(), parsed.end(), [](const auto& x, const auto& y) { return x.first.id < y.first.id; });
    std::map<std::string, int> type_ids;
    for (auto& [agent, type] : parsed) {
        auto it = type_ids.emplace(type, static_cast<int>(type_ids.size())).first;
        agent.type_id = it->second;
        out.type_names[it->second] = type;
        out.instance.agents.push_back(std::move(agent));
    }

    const auto report = validate_instance(out.instance);
    if (!report.empty()) {
        std::string msg;
        for (const auto& r : report) msg += (msg.empty() ? "" : "; ") + r;
        bad("$", msg);
    }
    return out;
}

std::string write_instance(const InstanceFile& file) {
    const Instance& inst = file.instance;
    const GoodsGraph& g = inst.graph;
    json doc;
    doc["graph"]["vertices"] = g.ids();
    json edges = json::array();
    for (const auto& [a, b] : g.edges()) edges.push_back({g.id(a), g.id(b)});
    doc["graph"]["edges"] = edges;

    std::vector<const Agent*> agents;
    for (const auto& a : inst.agents) agents.push_back(&a);
    std::sort(agents.begin(), agents.end(), [](const Agent* x, const Agent* y) { return x->id < y->id; });
    json list = json::array();
    for (const Agent* a : agents) {
        json entry;
        entry["id"] = a->id;
        auto name = file.type_names.find(a->type_id);
        entry["type"] = name != file.type_names.end() ? name->second : "t" + std::to_string(a->type_id);
        json u = json::object();
        for (VertexIndex v = 0; v < g.size(); ++v) u[g.id(v)] = (*a)(v).str();
        entry["utilities"] = u;
        list.push_back(entry);
    }
    doc["agents"] = list;
    return dump(doc);
}

std::string write_instance(const Instance& inst) { return write_instance(InstanceFile{inst, {}}); }

AllocationFile allocation_file(const Instance& inst, const verify::Certificate& cert) {
    const GoodsGraph& g = inst.graph;
    AllocationFile out;
    out.alpha_target = cert.alpha_target;
    out.min_ratio = cert.min_ratio;
    std::vector<char> used(g.size(), 0);
    for (const auto& line : cert.per_agent) {
        out.bundles.push_back({line.agent, g.ids_of(line.bundle), line.value, line.mms, line.ratio});
        for (VertexIndex v : line.bundle)
            if (v >= 0 && v < g.size()) used[v] = 1;
    }
    for (VertexIndex v = 0; v < g.size(); ++v)
        if (!used[v]) out.unassigned.push_back(g.id(v));
    return out;
}

std::string write_allocation(const AllocationFile& file) {
    json doc;
    doc["alpha_target"] = file.alpha_target.str();
    doc["min_ratio"] = file.min_ratio.str();
    json bundles = json::array();
    for (const auto& b : file.bundles)
        bundles.push_back({{"agent", b.agent},
                           {"vertices", b.vertices},
                           {"value", b.value.str()},
                           {"mms", b.mms.str()},
                           {"ratio", b.ratio.str()}});
    doc["bundles"] = bundles;
    doc["unassigned"] = file.unassigned;
    return dump(doc);
}

AllocationFile parse_allocation(std::string_view text) {
    const json doc = parse_json(text);
    AllocationFile out;
    out.alpha_target = value_of(field(doc, "alpha_target", "$"), "alpha_target");
    out.min_ratio = value_of(field(doc, "min_ratio", "$"), "min_ratio");
    const json& bundles = field(doc, "bundles", "$");
    if (!bundles.is_array()) bad("bundles", "expected an array");
    for (std::size_t i = 0; i < bundles.size(); ++i) {
        const std::string where = "bundles[" + std::to_string(i) + "]";
        const json& b = bundles[i];
        BundleLine line;
        line.agent = agent_id_of(field(b, "agent", where), where + ".agent");
        const json& vs = field(b, "vertices", where);
        if (!vs.is_array()) bad(where + ".vertices", "expected an array");
        for (const auto& v : vs) line.vertices.push_back(string_of(v, where + ".vertices"));
        if (b.contains("value")) line.value = value_of(b["value"], where + ".value");
        if (b.contains("mms")) line.mms = value_of(b["mms"], where + ".mms");
        if (b.contains("ratio")) line.ratio = value_of(b["ratio"], where + ".ratio");
        out.bundles.push_back(std::move(line));
    }
    if (doc.contains("unassigned")) {
        if (!doc["unassigned"].is_array()) bad("unassigned", "expected an array");
        for (const auto& v : doc["unassigned"]) out.unassigned.push_back(string_of(v, "unassigned"));
    }
    return out;
}

Allocation to_allocation(const AllocationFile& file, const GoodsGraph& g) {
    Allocation out;
    out.target_alpha = file.alpha_target;
    for (const auto& b : file.bundles) {
        VertexList vs;
        for (const auto& id : b.vertices) {
            if (!g.contains(id)) throw InvalidInput("allocation names unknown vertex '" + id + "'");
            vs.push_back(g.index_of(id));
        }
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            throw InvalidInput("bundle of agent " + std::to_string(b.agent) + " repeats a vertex");
        out.packing.bundles.push_back({b.agent, std::move(vs)});
        out.per_agent_ratio[b.agent] = b.ratio;
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << content)) throw InvalidInput("cannot write '" + path + "'");
}

} // namespace cmms::io
