#include "cmms/instance.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cmms/errors.hpp"

namespace cmms {

GoodsGraph::GoodsGraph(std::vector<std::string> ids, const std::vector<std::pair<std::string, std::string>>& edges) {
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw InvalidInput("duplicate vertex id '" + *std::adjacent_find(ids.begin(), ids.end()) + "'");
    ids_ = std::move(ids);
    std::vector<std::pair<int, int>> idx;
    idx.reserve(edges.size());
    for (const auto& [a, b] : edges) idx.emplace_back(index_of(a), index_of(b));
    build(idx);
}

GoodsGraph GoodsGraph::from_indices(const std::vector<std::string>& ids, const std::vector<std::pair<int, int>>& edges) {
    std::vector<std::pair<std::string, std::string>> named;
    named.reserve(edges.size());
    for (auto [a, b] : edges) {
        if (a < 0 || b < 0 || a >= static_cast<int>(ids.size()) || b >= static_cast<int>(ids.size()))
            throw InvalidInput("edge endpoint out of range");
        named.emplace_back(ids[a], ids[b]);
    }
    return GoodsGraph(ids, named);
}

void GoodsGraph::build(const std::vector<std::pair<int, int>>& edges) {
    const int n = size();
    adj_.assign(n, {});
    adj_matrix_.assign(static_cast<std::size_t>(n) * n, 0);
    edge_count_ = 0;
    for (auto [a, b] : edges) {
        if (a == b) throw InvalidInput("self-loop at '" + ids_[a] + "'");
        if (adjacent(a, b)) throw InvalidInput("duplicate edge {" + ids_[a] + "," + ids_[b] + "}");
        adj_matrix_[a * n + b] = adj_matrix_[b * n + a] = 1;
        adj_[a].push_back(b);
        adj_[b].push_back(a);
        ++edge_count_;
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
}

VertexIndex GoodsGraph::index_of(const std::string& id) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) throw InvalidInput("unknown vertex id '" + id + "'");
    return static_cast<VertexIndex>(it - ids_.begin());
}

bool GoodsGraph::contains(const std::string& id) const { return std::binary_search(ids_.begin(), ids_.end(), id); }

std::vector<std::pair<VertexIndex, VertexIndex>> GoodsGraph::edges() const {
    std::vector<std::pair<VertexIndex, VertexIndex>> out;
    out.reserve(edge_count_);
    for (VertexIndex a = 0; a < size(); ++a)
        for (VertexIndex b : adj_[a])
            if (a < b) out.emplace_back(a, b);
    return out;
}

VertexList GoodsGraph::all_vertices() const {
    VertexList out(size());
    std::iota(out.begin(), out.end(), 0);
    return out;
}

InducedSubgraph GoodsGraph::induced(const VertexList& keep) const {
    std::vector<int> local(size(), -1);
    std::vector<std::string> ids;
    ids.reserve(keep.size());
    for (std::size_t i = 0; i < keep.size(); ++i) {
        local.at(keep[i]) = static_cast<int>(i);
        ids.push_back(ids_[keep[i]]);
    }
    std::vector<std::pair<int, int>> edges;
    for (VertexIndex a : keep)
        for (VertexIndex b : adj_[a])
            if (a < b && local[b] >= 0) edges.emplace_back(local[a], local[b]);
    InducedSubgraph out;
    out.graph.ids_ = std::move(ids);
    out.graph.build(edges);
    out.to_parent = keep;
    return out;
}

std::vector<std::string> GoodsGraph::ids_of(const VertexList& vs) const {
    std::vector<std::string> out;
    out.reserve(vs.size());
    for (VertexIndex v : vs) out.push_back(ids_.at(v));
    return out;
}

const Agent& Instance::agent(AgentId id) const {
    for (const auto& a : agents)
        if (a.id == id) return a;
    throw InvalidInput("unknown agent " + std::to_string(id));
}

Instance Instance::restrict_to(const VertexList& keep, const std::vector<AgentId>& agent_ids) const {
    Instance out;
    out.graph = graph.induced(keep).graph;
    for (AgentId id : agent_ids) {
        const Agent& a = agent(id);
        Agent r{a.id, a.type_id, {}};
        r.utility.reserve(keep.size());
        for (VertexIndex v : keep) r.utility.push_back(a.utility.at(v));
        out.agents.push_back(std::move(r));
    }
    return out;
}

std::vector<AgentId> Instance::agent_ids() const {
    std::vector<AgentId> out;
    for (const auto& a : agents) out.push_back(a.id);
    return out;
}

int Instance::type_count() const {
    std::set<int> types;
    for (const auto& a : agents) types.insert(a.type_id);
    return static_cast<int>(types.size());
}

Value utility_of_set(const Agent& agent, std::span<const VertexIndex> s) {
    Value total;
    for (VertexIndex v : s) {
        if (v < 0 || v >= static_cast<int>(agent.utility.size()))
            throw InvalidInput("vertex index " + std::to_string(v) + " outside the utility domain");
        total += agent.utility[v];
    }
    return total;
}

Value utility_of_set(const GoodsGraph& graph, const Agent& agent, const std::vector<std::string>& ids) {
    VertexList s;
    s.reserve(ids.size());
    for (const auto& id : ids) s.push_back(graph.index_of(id));
    return utility_of_set(agent, s);
}

std::vector<std::string> validate_instance(const Instance& inst) {
    std::vector<std::string> report;
    const auto& g = inst.graph;
    if (inst.agents.empty()) report.emplace_back("instance has no agents");
    std::map<int, const Agent*> first_of_type;
    for (std::size_t k = 0; k < inst.agents.size(); ++k) {
        const Agent& a = inst.agents[k];
        const std::string who = "agent " + std::to_string(a.id);
        if (a.id != static_cast<int>(k) + 1)
            report.push_back(who + ": ids must be 1..n in order (expected " + std::to_string(k + 1) + ")");
        const int m = static_cast<int>(a.utility.size());
        for (VertexIndex v = m; v < g.size(); ++v) report.push_back(who + ": no utility for vertex '" + g.id(v) + "'");
        if (m > g.size())
            report.push_back(who + ": " + std::to_string(m - g.size()) + " utility entries beyond the vertex set");
        for (VertexIndex v = 0; v < std::min(m, g.size()); ++v)
            if (a.utility[v].is_negative())
                report.push_back(who + ": negative utility " + a.utility[v].str() + " for vertex '" + g.id(v) + "'");
        auto [it, fresh] = first_of_type.emplace(a.type_id, &a);
        if (!fresh && it->second->utility != a.utility)
            report.push_back(who + ": utility differs from agent " + std::to_string(it->second->id) +
                             " of the same type " + std::to_string(a.type_id));
    }
    return report;
}

bool is_alpha_bounded(const Instance& inst, const Agent& agent, const Value& alpha, const Value& mms_value) {
    if (mms_value.is_zero()) return false;
    const Value bound = alpha * mms_value;
    for (VertexIndex v = 0; v < inst.graph.size(); ++v)
        if (agent.utility.at(v) >= bound) return false;
    return true;
}

bool Packing::is_partition(const GoodsGraph& graph) const {
    VertexList c = covered();
    return static_cast<int>(c.size()) == graph.size() && std::adjacent_find(c.begin(), c.end()) == c.end();
}

VertexList Packing::covered() const {
    VertexList out;
    for (const auto& b : bundles) out.insert(out.end(), b.vertices.begin(), b.vertices.end());
    std::sort(out.begin(), out.end());
    return out;
}

VertexList Packing::bundle_of(AgentId agent) const {
    for (const auto& b : bundles)
        if (b.agent == agent) return b.vertices;
    return {};
}

bool Packing::has_agent(AgentId agent) const {
    return std::any_of(bundles.begin(), bundles.end(), [&](const Bundle& b) { return b.agent == agent; });
}

Value ratio_or_one(const Value& value, const Value& target) {
    if (target.is_zero()) return Value(1);
    return value / target;
}

VertexList set_union(const VertexList& a, const VertexList& b) {
    VertexList out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexList set_difference(const VertexList& a, const VertexList& b) {
    VertexList out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

VertexList set_intersection(const VertexList& a, const VertexList& b) {
    VertexList out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

} // namespace cmms
