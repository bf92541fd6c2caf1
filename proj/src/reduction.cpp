#include "cmms/reduction.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "cmms/errors.hpp"
#include "cmms/graphs.hpp"

namespace cmms::reduction {

namespace {

const Value& target_of(const Targets& targets, AgentId id) {
    auto it = targets.find(id);
    if (it == targets.end()) throw InvalidInput("no target for agent " + std::to_string(id));
    if (it->second.is_negative()) throw InvalidInput("negative target for agent " + std::to_string(id));
    return it->second;
}

bool subset_of(const VertexList& a, const VertexList& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

} // namespace

ReductionState peel_heavy_vertices(const Instance& inst, const Value& alpha, const Targets& targets,
                                   const std::map<AgentId, Packing>* packings) {
    ReductionState st;
    const int m = inst.graph.size();
    std::vector<char> taken(m, 0);
    std::set<AgentId> open;
    for (const auto& a : inst.agents) {
        if (target_of(targets, a.id).is_zero())
            st.zero_target_agents.push_back(a.id);
        else
            open.insert(a.id);
    }

    for (bool progress = true; progress;) {
        progress = false;
        for (AgentId id : open) {
            const Agent& a = inst.agent(id);
            const Value bar = alpha * target_of(targets, id);
            int best = -1;
            for (VertexIndex v = 0; v < m; ++v)
                if (!taken[v] && a(v) >= bar && (best < 0 || a(v) > a(best))) best = v;
            if (best < 0) continue;
            taken[best] = 1;
            st.heavy.push_back({best, id});
            open.erase(id);
            progress = true;
            break;
        }
    }
    st.residual_agents.assign(open.begin(), open.end());

    VertexList rest;
    for (VertexIndex v = 0; v < m; ++v)
        if (!taken[v]) rest.push_back(v);
    st.components = graphs::connected_components(inst.graph, rest);

    if (packings) {
        for (AgentId id : st.residual_agents) {
            auto it = packings->find(id);
            if (it == packings->end()) throw InvalidInput("no packing for agent " + std::to_string(id));
            for (int j = 0; j < static_cast<int>(st.components.size()); ++j) {
                int count = 0;
                for (const auto& b : it->second.bundles)
                    if (!b.vertices.empty() && subset_of(b.vertices, st.components[j])) ++count;
                st.f[{id, j}] = count;
            }
        }
    }
    return st;
}

int compute_kj(const std::vector<int>& sorted_f) {
    int k = 0;
    for (int p = 1; p <= static_cast<int>(sorted_f.size()); ++p)
        if (sorted_f[p - 1] >= p) k = p;
    return k;
}

int ReductionTrace::kj_sum() const {
    int s = 0;
    for (const auto& step : steps) s += step.kj;
    return s;
}

ReductionResult allocate_reduction(const Instance& inst, const Value& alpha, const Targets& targets,
                                   const std::map<AgentId, Packing>& packings, const ConnectedSolver& solver) {
    const int n = inst.agent_count();
    for (const auto& a : inst.agents) {
        const Value& t = target_of(targets, a.id);
        if (t.is_zero()) continue;
        auto it = packings.find(a.id);
        if (it == packings.end()) throw InvalidInput("no packing for agent " + std::to_string(a.id));
        int good = 0;
        VertexList seen;
        for (const auto& b : it->second.bundles) {
            if (!set_intersection(seen, b.vertices).empty())
                throw InvalidInput("packing of agent " + std::to_string(a.id) + " has overlapping bundles");
            seen = set_union(seen, b.vertices);
            if (!graphs::is_connected_subset(inst.graph, b.vertices))
                throw InvalidInput("packing of agent " + std::to_string(a.id) + " has a disconnected bundle");
            if (utility_of_set(a, b.vertices) >= t) ++good;
        }
        if (good < n)
            throw InvalidInput("packing of agent " + std::to_string(a.id) + " has fewer than n bundles worth the target");
    }

    ReductionResult res;
    auto& st = res.trace.state;
    st = peel_heavy_vertices(inst, alpha, targets, &packings);

    Allocation& out = res.allocation;
    out.target_alpha = alpha;
    for (AgentId id : st.zero_target_agents) out.packing.bundles.push_back({id, {}});
    for (const auto& h : st.heavy) out.packing.bundles.push_back({h.agent, {h.vertex}});

    std::set<AgentId> remaining(st.residual_agents.begin(), st.residual_agents.end());
    for (int j = 0; j < static_cast<int>(st.components.size()); ++j) {
        std::vector<AgentId> order(remaining.begin(), remaining.end());
        std::stable_sort(order.begin(), order.end(),
                         [&](AgentId a, AgentId b) { return st.f.at({a, j}) > st.f.at({b, j}); });
        std::vector<int> sorted_f;
        for (AgentId id : order) sorted_f.push_back(st.f.at({id, j}));
        const int kj = compute_kj(sorted_f);
        ComponentStep step{j, kj, {order.begin(), order.begin() + kj}};
        if (kj > 0) {
            std::vector<AgentId> chosen = step.agents;
            std::sort(chosen.begin(), chosen.end());
            const VertexList& comp = st.components[j];
            Instance sub = inst.restrict_to(comp, chosen);
            Targets sub_targets;
            for (AgentId id : chosen) sub_targets[id] = targets.at(id);
            Allocation got = solver(sub, sub_targets);
            VertexList used;
            for (AgentId id : chosen) {
                if (!got.packing.has_agent(id))
                    throw InternalGuaranteeViolation("solver returned no bundle for agent " + std::to_string(id));
                VertexList local = got.packing.bundle_of(id);
                if (!set_intersection(used, local).empty())
                    throw InternalGuaranteeViolation("solver returned overlapping bundles");
                used = set_union(used, local);
                if (!graphs::is_connected_subset(sub.graph, local))
                    throw InternalGuaranteeViolation("solver returned a disconnected bundle for agent " +
                                                     std::to_string(id));
                VertexList global;
                for (VertexIndex v : local) global.push_back(comp.at(v));
                if (utility_of_set(inst.agent(id), global) < alpha * targets.at(id))
                    throw InternalGuaranteeViolation("solver under-delivered for agent " + std::to_string(id));
                out.packing.bundles.push_back({id, std::move(global)});
                remaining.erase(id);
            }
        }
        res.trace.steps.push_back(std::move(step));
    }
    if (!remaining.empty())
        throw InternalGuaranteeViolation(std::to_string(remaining.size()) + " agents left unserved by the reduction");

    std::sort(out.packing.bundles.begin(), out.packing.bundles.end(),
              [](const Bundle& a, const Bundle& b) { return a.agent < b.agent; });
    for (const auto& b : out.packing.bundles)
        out.per_agent_ratio[b.agent] = ratio_or_one(utility_of_set(inst.agent(b.agent), b.vertices), targets.at(b.agent));
    return res;
}

std::pair<Targets, std::map<AgentId, Packing>> targets_from_records(const std::vector<oracle::MmsRecord>& records) {
    std::pair<Targets, std::map<AgentId, Packing>> out;
    for (const auto& r : records) {
        out.first[r.agent] = r.value;
        out.second[r.agent] = r.witness;
    }
    return out;
}

ReductionResult allocate_reduction(const Instance& inst, const Value& alpha, const ConnectedSolver& solver,
                                   const oracle::OracleConfig& config) {
    auto [targets, packings] = targets_from_records(oracle::pmms_all(inst, config));
    return allocate_reduction(inst, alpha, targets, packings, solver);
}

} // namespace cmms::reduction
