#include "cmms/block_cactus.hpp"

#include <algorithm>
#include <map>

#include "cmms/carve.hpp"
#include "cmms/errors.hpp"
#include "cmms/graphs.hpp"

namespace cmms::blockcactus {

namespace {

const Value kHalf(1, 2);

Allocation finish(const std::vector<Agent>& agents, const reduction::Targets& targets, Packing packing) {
    Allocation out;
    out.target_alpha = kHalf;
    for (const auto& a : agents) {
        if (!packing.has_agent(a.id)) packing.bundles.push_back({a.id, {}});
        out.per_agent_ratio[a.id] = ratio_or_one(utility_of_set(a, packing.bundle_of(a.id)), targets.at(a.id));
    }
    std::sort(packing.bundles.begin(), packing.bundles.end(),
              [](const Bundle& x, const Bundle& y) { return x.agent < y.agent; });
    out.packing = std::move(packing);
    return out;
}

void require_half(const std::vector<Agent>& agents, const reduction::Targets& targets, const Packing& packing,
                  const GoodsGraph& g, const char* where) {
    for (const auto& a : agents) {
        auto b = packing.bundle_of(a.id);
        if (!graphs::is_connected_subset(g, b))
            throw InternalGuaranteeViolation(std::string(where) + ": disconnected bundle for agent " +
                                             std::to_string(a.id));
        if (utility_of_set(a, b) < kHalf * targets.at(a.id))
            throw InternalGuaranteeViolation(std::string(where) + ": agent " + std::to_string(a.id) +
                                             " below half her target");
    }
}

Allocation solve_frame(const BoundedCallFrame& frame, const Options& options, Stats& stats);

// Case 1: fold B' into the cut vertex and solve the smaller graph with the
// full pipeline, since the folded vertex may be heavy.
Allocation contract(const BoundedCallFrame& frame, const VertexList& block, VertexIndex cut, const Options& options,
                    Stats& stats) {
    const GoodsGraph& g = frame.graph;
    const VertexList inner = set_difference(block, {cut});
    const VertexList keep = set_difference(g.all_vertices(), inner);
    const auto induced = g.induced(keep);
    const VertexIndex cut_local =
        static_cast<VertexIndex>(std::lower_bound(keep.begin(), keep.end(), cut) - keep.begin());

    Instance contracted{induced.graph, {}};
    for (const auto& a : frame.agents) {
        Agent c{a.id, a.type_id, {}};
        for (VertexIndex v : keep) c.utility.push_back(a(v));
        c.utility[cut_local] = utility_of_set(a, block);
        contracted.agents.push_back(std::move(c));
    }

    const int n = static_cast<int>(frame.agents.size());
    std::map<AgentId, Packing> packings;
    std::map<int, oracle::MmsRecord> by_type;
    for (const auto& a : contracted.agents) {
        auto it = by_type.find(a.type_id);
        if (it == by_type.end()) it = by_type.emplace(a.type_id, oracle::mms(contracted.graph, a, n, options.oracle)).first;
        ++stats.case1_checks;
        if (it->second.value < frame.targets.at(a.id)) {
            ++stats.case1_violations;
            throw InternalGuaranteeViolation("contracted mms of agent " + std::to_string(a.id) + " is " +
                                             it->second.value.str() + ", below target " +
                                             frame.targets.at(a.id).str());
        }
        packings[a.id] = it->second.witness;
    }

    auto solver = [&](const Instance& sub, const reduction::Targets& t) {
        return solve_frame(BoundedCallFrame{sub.graph, sub.agents, t}, options, stats);
    };
    auto res = reduction::allocate_reduction(contracted, kHalf, frame.targets, packings, solver);

    Packing out;
    for (const auto& b : res.allocation.packing.bundles) {
        VertexList vs;
        for (VertexIndex v : b.vertices) vs.push_back(keep[v]);
        if (std::binary_search(b.vertices.begin(), b.vertices.end(), cut_local)) vs = set_union(vs, inner);
        out.bundles.push_back({b.agent, std::move(vs)});
    }
    return finish(frame.agents, frame.targets, std::move(out));
}

// Case 2: carve along a Hamiltonian path of the block that ends at the cut
// vertex, then recurse on what is left with the remaining agents.
Allocation carve_block(const BoundedCallFrame& frame, const VertexList& block, VertexIndex cut, const Options& options,
                       Stats& stats) {
    const GoodsGraph& g = frame.graph;
    const auto path = graphs::hamiltonian_path_in_block(block, g, cut);
    std::vector<AgentId> pool;
    std::map<AgentId, Value> thresholds;
    for (const auto& a : frame.agents) {
        pool.push_back(a.id);
        thresholds[a.id] = kHalf * frame.targets.at(a.id);
    }
    const auto carved = greedy_prefix_carve(path, pool, thresholds, frame.agents, true);
    if (carved.assignments.empty())
        throw InternalGuaranteeViolation("carve served nobody although some agent values the block enough");

    Packing out;
    VertexList taken;
    for (const auto& seg : carved.assignments) {
        VertexList vs(seg.vertices.begin(), seg.vertices.end());
        std::sort(vs.begin(), vs.end());
        taken = set_union(taken, vs);
        out.bundles.push_back({seg.agent, vs});
    }

    std::vector<Agent> rest_agents;
    for (const auto& a : frame.agents)
        if (std::find(carved.served.begin(), carved.served.end(), a.id) == carved.served.end())
            rest_agents.push_back(a);
    if (rest_agents.empty()) return finish(frame.agents, frame.targets, std::move(out));

    for (const auto& b : out.bundles)
        for (const auto& a : rest_agents) {
            ++stats.carve_checks;
            if (utility_of_set(a, b.vertices) >= frame.targets.at(a.id)) ++stats.carve_violations;
        }

    const VertexList keep = set_difference(g.all_vertices(), taken);
    const auto induced = g.induced(keep);
    BoundedCallFrame next{induced.graph, {}, {}};
    for (const auto& a : rest_agents) {
        Agent r{a.id, a.type_id, {}};
        for (VertexIndex v : keep) r.utility.push_back(a(v));
        next.targets[a.id] = frame.targets.at(a.id);
        next.agents.push_back(std::move(r));
    }

    if (options.check_invariants && next.graph.size() <= options.check_cap) {
        const int left = static_cast<int>(next.agents.size());
        for (const auto& a : next.agents) {
            ++stats.case2_checks;
            if (oracle::mms(next.graph, a, left, options.oracle).value < next.targets.at(a.id)) ++stats.case2_violations;
        }
    }

    auto sub = solve_frame(next, options, stats);
    for (const auto& b : sub.packing.bundles) {
        VertexList vs;
        for (VertexIndex v : b.vertices) vs.push_back(keep[v]);
        out.bundles.push_back({b.agent, std::move(vs)});
    }
    return finish(frame.agents, frame.targets, std::move(out));
}

Allocation solve_frame(const BoundedCallFrame& frame, const Options& options, Stats& stats) {
    const GoodsGraph& g = frame.graph;
    if (frame.agents.empty()) return finish({}, frame.targets, {});
    for (const auto& a : frame.agents) {
        const Value& t = frame.targets.at(a.id);
        for (VertexIndex v = 0; v < g.size(); ++v)
            if (a(v) >= kHalf * t)
                throw InternalGuaranteeViolation("agent " + std::to_string(a.id) + " is not 1/2-bounded on vertex '" +
                                                 g.id(v) + "'");
    }

    const auto tree = graphs::block_cut_tree(g);
    Allocation out;
    if (frame.agents.size() == 1) {
        // A connected graph is its own mms-partition for a single agent.
        ++stats.base_cases;
        out = finish(frame.agents, frame.targets, Packing{{{frame.agents[0].id, g.all_vertices()}}});
    } else if (tree.blocks.size() == 1) {
        ++stats.base_cases;
        auto found = oracle::max_min_ratio_allocation(g, frame.agents, frame.targets, options.oracle);
        out = finish(frame.agents, frame.targets, std::move(found.packing));
    } else {
        int chosen = -1;
        for (int b : tree.terminal_blocks)
            if (chosen < 0 || tree.blocks[b].front() < tree.blocks[chosen].front()) chosen = b;
        const VertexList& block = tree.blocks[chosen];
        const VertexList cuts = tree.cut_vertices_of(chosen);
        if (cuts.size() != 1) throw InternalGuaranteeViolation("terminal block without a unique cut vertex");
        const VertexIndex cut = cuts.front();
        const VertexList inner = set_difference(block, {cut});
        const bool small = std::all_of(frame.agents.begin(), frame.agents.end(), [&](const Agent& a) {
            return utility_of_set(a, inner) < frame.targets.at(a.id);
        });
        if (small) {
            ++stats.case1;
            out = contract(frame, block, cut, options, stats);
        } else {
            ++stats.case2;
            out = carve_block(frame, block, cut, options, stats);
        }
    }
    out.target_alpha = kHalf;
    require_half(frame.agents, frame.targets, out.packing, g, "block-cactus");
    return out;
}

} // namespace

Allocation allocate_bounded(const BoundedCallFrame& frame, const Options& options, Stats* stats) {
    Stats local;
    auto out = solve_frame(frame, options, stats ? *stats : local);
    return out;
}

Allocation allocate_block_cactus(const Instance& inst, const Options& options, Stats* stats) {
    const auto witness = graphs::recognize(inst.graph);
    if (!witness.has(graphs::GraphClass::connected) || !witness.has(graphs::GraphClass::block_cactus))
        throw ClassMismatch("graph is not a connected block-cactus graph");
    Stats local;
    Stats& st = stats ? *stats : local;
    auto solver = [&](const Instance& sub, const reduction::Targets& t) {
        return solve_frame(BoundedCallFrame{sub.graph, sub.agents, t}, options, st);
    };
    auto res = reduction::allocate_reduction(inst, kHalf, solver, options.oracle);
    return res.allocation;
}

} // namespace cmms::blockcactus
