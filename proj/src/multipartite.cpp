#include "cmms/multipartite.hpp"

#include <algorithm>
#include <map>

#include "cmms/carve.hpp"
#include "cmms/errors.hpp"
#include "cmms/graphs.hpp"

namespace cmms::multipartite {

namespace {

const Value kQuarter(1, 4);

void guarantee(bool ok, const std::string& what) {
    if (!ok) throw InternalGuaranteeViolation("multipartite: " + what);
}

} // namespace

BipartSplit split_sides(const std::vector<VertexList>& parts, const std::vector<Agent>& agents) {
    std::vector<VertexList> sorted = parts;
    std::sort(sorted.begin(), sorted.end(), [](const VertexList& a, const VertexList& b) {
        return a.size() != b.size() ? a.size() < b.size() : a.front() < b.front();
    });
    const std::size_t n = agents.size();
    BipartSplit out;
    std::size_t k = 0;
    while (k < sorted.size() && out.v1.size() < n) out.v1 = set_union(out.v1, sorted[k++]);
    out.ell = static_cast<int>(k);
    guarantee(out.v1.size() >= n && k < sorted.size(), "no proper prefix of the parts holds n vertices");
    for (; k < sorted.size(); ++k) out.v2 = set_union(out.v2, sorted[k]);
    for (const auto& a : agents)
        (utility_of_set(a, out.v1) >= utility_of_set(a, out.v2) ? out.n1 : out.n2).push_back(a.id);
    return out;
}

Allocation allocate_bounded_multipartite(const GoodsGraph& g, const std::vector<VertexList>& parts,
                                         const std::vector<Agent>& agents, const reduction::Targets& targets,
                                         Stats* stats) {
    Stats local;
    Stats& st = stats ? *stats : local;
    ++st.bounded_calls;

    Allocation out;
    out.target_alpha = kQuarter;
    if (agents.empty()) return out;
    const int n = static_cast<int>(agents.size());
    std::map<AgentId, const Agent*> by_id;
    for (const auto& a : agents) {
        by_id[a.id] = &a;
        const Value& t = targets.at(a.id);
        for (VertexIndex v = 0; v < g.size(); ++v)
            guarantee(a(v) < kQuarter * t, "agent " + std::to_string(a.id) + " is not 1/4-bounded");
    }
    guarantee(parts.size() >= 2, "fewer than two parts");
    guarantee(g.size() >= 5 * n, "|V| < 5n for bounded agents");

    const BipartSplit sides = split_sides(parts, agents);
    guarantee(sides.v2.size() >= static_cast<std::size_t>(n), "|V2| < n");
    for (AgentId id : sides.n1)
        guarantee(utility_of_set(*by_id[id], sides.v1) >= Value(n, 2) * targets.at(id),
                  "u_i(V1) < (n/2) target for agent " + std::to_string(id));
    for (AgentId id : sides.n2)
        guarantee(utility_of_set(*by_id[id], sides.v2) >= Value(n, 2) * targets.at(id),
                  "u_i(V2) < (n/2) target for agent " + std::to_string(id));

    std::map<AgentId, Value> thresholds;
    for (const auto& a : agents) thresholds[a.id] = kQuarter * targets.at(a.id);

    std::map<AgentId, VertexList> bundle;
    std::vector<AgentId> serving;
    std::vector<char> assigned(g.size(), 0);
    auto carve_side = [&](const VertexList& side, const std::vector<AgentId>& pool) {
        auto res = greedy_prefix_carve(side, pool, thresholds, agents, false);
        guarantee(res.served.size() == pool.size(), "carving left an agent unserved");
        std::vector<AgentId> active = pool;
        for (const auto& seg : res.assignments) {
            for (AgentId j : active) {
                ++st.carve_checks;
                if (utility_of_set(*by_id[j], seg.vertices) >= Value(1, 2) * targets.at(j)) ++st.carve_violations;
            }
            active.erase(std::find(active.begin(), active.end(), seg.agent));
            VertexList vs(seg.vertices.begin(), seg.vertices.end());
            std::sort(vs.begin(), vs.end());
            for (VertexIndex v : vs) assigned[v] = 1;
            bundle[seg.agent] = vs;
            serving.push_back(seg.agent);
        }
    };
    carve_side(sides.v1, sides.n1);
    carve_side(sides.v2, sides.n2);

    // One spare from the opposite side makes each bundle connected.
    for (AgentId id : serving) {
        const bool in_v1 = std::find(sides.n1.begin(), sides.n1.end(), id) != sides.n1.end();
        const VertexList& other = in_v1 ? sides.v2 : sides.v1;
        auto spare = std::find_if(other.begin(), other.end(), [&](VertexIndex v) { return !assigned[v]; });
        guarantee(spare != other.end(), "no spare vertex left for agent " + std::to_string(id));
        assigned[*spare] = 1;
        bundle[id] = set_union(bundle[id], {*spare});
    }

    // Every bundle now meets both sides, so any leftover has a neighbour in it.
    const AgentId first = bundle.begin()->first;
    for (VertexIndex v = 0; v < g.size(); ++v)
        if (!assigned[v]) bundle[first] = set_union(bundle[first], {v});

    for (const auto& [id, vs] : bundle) {
        guarantee(graphs::is_connected_subset(g, vs), "bundle of agent " + std::to_string(id) + " is disconnected");
        const Value value = utility_of_set(*by_id[id], vs);
        guarantee(value >= kQuarter * targets.at(id), "agent " + std::to_string(id) + " below a quarter of her target");
        out.packing.bundles.push_back({id, vs});
        out.per_agent_ratio[id] = ratio_or_one(value, targets.at(id));
    }
    return out;
}

Allocation allocate_multipartite(const Instance& inst, const oracle::OracleConfig& config, Stats* stats) {
    const auto witness = graphs::recognize(inst.graph);
    if (!witness.has(graphs::GraphClass::complete_multipartite) || !witness.parts || witness.parts->size() < 2)
        throw ClassMismatch("graph is not complete multipartite with at least two parts");
    auto solver = [&](const Instance& sub, const reduction::Targets& t) {
        const auto w = graphs::recognize(sub.graph);
        if (!w.parts) throw InternalGuaranteeViolation("multipartite: component is not complete multipartite");
        return allocate_bounded_multipartite(sub.graph, *w.parts, sub.agents, t, stats);
    };
    return reduction::allocate_reduction(inst, kQuarter, solver, config).allocation;
}

} // namespace cmms::multipartite
