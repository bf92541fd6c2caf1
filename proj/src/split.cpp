#include "cmms/split.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "cmms/errors.hpp"

namespace cmms::split {

namespace {

Value third(int k) { return Value(3) / Value((std::int64_t{7} << k) - 3); }

bool contains(const VertexList& s, VertexIndex v) { return std::binary_search(s.begin(), s.end(), v); }

std::vector<Value> sorted_values(const Agent& a, const VertexList& s) {
    std::vector<Value> out;
    for (VertexIndex v : s) out.push_back(a(v));
    std::sort(out.begin(), out.end(), std::greater<>());
    return out;
}

void guarantee(bool ok, const std::string& what) {
    if (!ok) throw InternalGuaranteeViolation("split: " + what);
}

// Kernel utility of a K-vertex: own value plus everything anchored to it.
Value folded(const Agent& a, const KernelInstance& kern, VertexIndex kernel_vertex) {
    return a(kern.to_parent[kernel_vertex]) + utility_of_set(a, kern.attached[kernel_vertex]);
}

} // namespace

void Diagnostics::record_kernel_ratio(const Value& r) {
    if (!min_kernel_ratio || r < *min_kernel_ratio) min_kernel_ratio = r;
}

Value beta(int k, int ell) {
    if (k < 0 || ell < 0 || ell > k) throw InvalidInput("beta needs 0 <= ell <= k");
    Value b = 1;
    for (int l = 0; l < ell; ++l) b = (b - third(k)) / 2;
    return b;
}

int level_for_types(int p) {
    if (p < 1) throw InvalidInput("type count must be positive");
    int k = 0;
    while ((1 << k) < p) ++k;
    return k;
}

Value alpha_for_level(int k) { return third(k); }

PackingSequence merge_packings(const PackingSequence& left, const PackingSequence& right,
                               const std::vector<Agent>& owners, const VertexList& independent, int k,
                               Diagnostics* diag) {
    if (left.level != right.level) throw StructuralError("merging sequences of different levels");
    std::vector<Packing> r = left.packings;
    r.insert(r.end(), right.packings.begin(), right.packings.end());
    if (owners.size() != r.size()) throw InvalidInput("one owner per packing required");

    // The two (packing, bundle) locations of every I-vertex.
    std::map<VertexIndex, std::vector<std::pair<int, int>>> where;
    for (VertexIndex v : independent) where[v];
    for (int p = 0; p < static_cast<int>(r.size()); ++p)
        for (int b = 0; b < static_cast<int>(r[p].bundles.size()); ++b)
            for (VertexIndex v : r[p].bundles[b].vertices)
                if (where.count(v)) where[v].emplace_back(p, b);
    for (const auto& [v, locs] : where)
        if (locs.size() != 2 || locs[0].first == locs[1].first)
            throw StructuralError("independent vertex " + std::to_string(v) +
                                  " is not covered by exactly two packings");

    const std::vector<Packing> before = r;
    std::set<VertexIndex> unassigned(independent.begin(), independent.end());
    auto best_in = [&](int p, int b) -> std::optional<VertexIndex> {
        std::optional<VertexIndex> best;
        for (VertexIndex v : r[p].bundles[b].vertices)
            if (unassigned.count(v) && (!best || owners[p](v) > owners[p](*best))) best = v;
        return best;
    };

    std::optional<std::pair<int, int>> next;
    for (;;) {
        std::optional<std::pair<int, int>> pick;
        std::optional<VertexIndex> v;
        if (next && (v = best_in(next->first, next->second))) pick = next;
        for (int p = 0; !pick && p < static_cast<int>(r.size()); ++p)
            for (int b = 0; !pick && b < static_cast<int>(r[p].bundles.size()); ++b)
                if ((v = best_in(p, b))) pick = std::make_pair(p, b);
        if (!pick) break;
        unassigned.erase(*v);
        const auto& locs = where[*v];
        const auto twin = locs[0] == *pick ? locs[1] : locs[0];
        auto& tv = r[twin.first].bundles[twin.second].vertices;
        tv.erase(std::find(tv.begin(), tv.end(), *v));
        next = twin;
    }

    if (diag) {
        ++diag->merges;
        for (std::size_t p = 0; p < r.size(); ++p)
            for (std::size_t b = 0; b < r[p].bundles.size(); ++b) {
                const auto& q = before[p].bundles[b].vertices;
                const auto& pp = r[p].bundles[b].vertices;
                auto vq = sorted_values(owners[p], q), wp = sorted_values(owners[p], pp);
                for (std::size_t j = 1; j <= q.size(); ++j) {
                    const Value w = j <= wp.size() ? wp[j - 1] : Value(0);
                    const Value v2 = 2 * j <= vq.size() ? vq[2 * j - 1] : Value(0);
                    ++diag->domination_checks;
                    if (w < v2) ++diag->domination_violations;
                }
                ++diag->halving_checks;
                const Value top = vq.empty() ? Value(0) : vq.front();
                if (utility_of_set(owners[p], pp) * 2 < utility_of_set(owners[p], q) - top) ++diag->halving_violations;
            }
    }
    return PackingSequence{std::move(r), left.level + 1, (left.beta - third(k)) / 2};
}

PackingSequence build_packing_sequence(const GoodsGraph& g, const graphs::SplitPair& split_pair,
                                       const std::vector<Agent>& types, const std::vector<Packing>& partitions,
                                       const std::vector<Value>& mms_values, int k, Diagnostics* diag) {
    const std::size_t count = std::size_t{1} << k;
    if (types.size() != count || partitions.size() != count || mms_values.size() != count)
        throw InvalidInput("packing sequence needs exactly 2^k types");
    for (std::size_t i = 0; i < count; ++i)
        guarantee(partitions[i].is_partition(g), "input for type " + std::to_string(i) + " is not a partition");

    std::function<PackingSequence(std::size_t, std::size_t)> build = [&](std::size_t lo, std::size_t hi) {
        if (hi - lo == 1) return PackingSequence{{partitions[lo]}, 0, 1};
        const std::size_t mid = (lo + hi) / 2;
        auto left = build(lo, mid);
        auto right = build(mid, hi);
        std::vector<Agent> owners(types.begin() + lo, types.begin() + hi);
        auto merged = merge_packings(left, right, owners, split_pair.independent, k, diag);
        guarantee(merged.beta == beta(k, merged.level), "beta bookkeeping drifted");
        for (std::size_t i = 0; i < merged.packings.size(); ++i)
            for (const auto& b : merged.packings[i].bundles)
                guarantee(utility_of_set(owners[i], b.vertices) >= merged.beta * mms_values[lo + i],
                          "bundle below beta * mms at level " + std::to_string(merged.level));
        return merged;
    };
    auto seq = build(0, count);

    for (VertexIndex v : split_pair.independent) {
        int covers = 0;
        for (const auto& p : seq.packings)
            for (const auto& b : p.bundles) covers += contains(b.vertices, v);
        guarantee(covers == 1, "independent vertex '" + g.id(v) + "' covered " + std::to_string(covers) + " times");
    }
    return seq;
}

VertexList KernelInstance::expand(const VertexList& kernel_bundle) const {
    VertexList out;
    for (VertexIndex w : kernel_bundle) out = set_union(set_union(out, {to_parent.at(w)}), attached.at(w));
    return out;
}

KernelInstance contract_to_kernel(const GoodsGraph& g, const graphs::SplitPair& split_pair,
                                  const PackingSequence& seq, const std::vector<Agent>& agents) {
    KernelInstance out;
    const auto& kset = split_pair.clique;
    auto induced = g.induced(kset);
    out.kernel = std::move(induced.graph);
    out.to_parent = std::move(induced.to_parent);
    out.attached.assign(kset.size(), {});

    for (const auto& p : seq.packings)
        for (const auto& b : p.bundles) {
            const VertexList inside_k = set_intersection(b.vertices, kset);
            if (inside_k.empty() && !b.vertices.empty())
                throw InternalGuaranteeViolation("split: a bundle consists of a single independent vertex");
            for (VertexIndex v : set_intersection(b.vertices, split_pair.independent)) {
                auto n = std::find_if(inside_k.begin(), inside_k.end(), [&](VertexIndex w) { return g.adjacent(v, w); });
                guarantee(n != inside_k.end(), "independent vertex without a neighbour in its bundle");
                out.anchor[v] = *n;
                const auto local = std::lower_bound(kset.begin(), kset.end(), *n) - kset.begin();
                out.attached[local] = set_union(out.attached[local], {v});
            }
        }

    for (const auto& a : agents) {
        Agent c{a.id, a.type_id, {}};
        for (std::size_t w = 0; w < kset.size(); ++w) c.utility.push_back(folded(a, out, static_cast<VertexIndex>(w)));
        out.agents.push_back(std::move(c));
    }
    return out;
}

void check_preservation(const GoodsGraph& g, const graphs::SplitPair& split_pair, const PackingSequence& seq,
                        const std::vector<Agent>& owners, const KernelInstance& kernel, Diagnostics& diag) {
    (void)g;
    const auto& kset = split_pair.clique;
    for (std::size_t i = 0; i < seq.packings.size(); ++i) {
        const Agent& a = owners.at(i);
        for (const auto& b : seq.packings[i].bundles) {
            Value lhs = 0;
            VertexList foreign;
            for (VertexIndex w : set_intersection(b.vertices, kset)) {
                const auto local = static_cast<VertexIndex>(std::lower_bound(kset.begin(), kset.end(), w) - kset.begin());
                lhs += folded(a, kernel, local);
                foreign = set_union(foreign, set_difference(kernel.attached[local], b.vertices));
            }
            const Value own = utility_of_set(a, b.vertices);
            guarantee(lhs == own + utility_of_set(a, foreign), "kernel utility does not decompose over a bundle");
            ++diag.preservation_checks;
            if (lhs != own) ++diag.preservation_literal_failures;
        }
    }
}

Allocation allocate_bounded_split(const GoodsGraph& g, const graphs::SplitPair& split_pair,
                                  const std::vector<Agent>& agents, const reduction::Targets& targets, int k,
                                  const Options& options, Diagnostics* diag) {
    Diagnostics local;
    Diagnostics& d = diag ? *diag : local;
    const Value alpha = third(k);
    Allocation out;
    out.target_alpha = alpha;
    if (agents.empty()) return out;
    const int n = static_cast<int>(agents.size());

    for (const auto& a : agents)
        for (VertexIndex v = 0; v < g.size(); ++v)
            guarantee(a(v) < alpha * targets.at(a.id), "agent " + std::to_string(a.id) + " is not bounded");

    // One representative per type, padded to 2^k with the last.
    std::vector<Agent> types;
    std::set<int> seen;
    for (const auto& a : agents)
        if (seen.insert(a.type_id).second) types.push_back(a);
    guarantee(types.size() <= (std::size_t{1} << k), "more types than the level allows");
    while (types.size() < (std::size_t{1} << k)) types.push_back(types.back());

    std::vector<Packing> partitions;
    std::vector<Value> mms_values;
    for (const auto& t : types) {
        auto rec = oracle::mms(g, t, n, options.oracle);
        partitions.push_back(rec.witness);
        mms_values.push_back(rec.value);
    }

    auto seq = build_packing_sequence(g, split_pair, types, partitions, mms_values, k, &d);
    auto kernel = contract_to_kernel(g, split_pair, seq, agents);
    check_preservation(g, split_pair, seq, types, kernel, d);
    for (VertexIndex v : split_pair.independent)
        if (!kernel.anchor.count(v)) ++d.uncovered_independent;

    std::map<AgentId, Value> kernel_targets;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        const Agent& ka = kernel.agents[i];
        auto lifted = oracle::mms(kernel.kernel, ka, n, options.oracle).value;
        kernel_targets[ka.id] = lifted;
        const auto t = std::find_if(types.begin(), types.end(), [&](const Agent& x) { return x.type_id == ka.type_id; });
        ++d.kernel_lift_checks;
        if (lifted < beta(k, k) * mms_values[t - types.begin()]) ++d.kernel_lift_violations;
    }

    auto solved = oracle::max_min_ratio_allocation(kernel.kernel, kernel.agents, kernel_targets, options.oracle);
    ++d.kernel_solves;
    Value worst = 1;
    for (const auto& [id, r] : solved.per_agent_ratio)
        if (!kernel_targets.at(id).is_zero()) worst = min(worst, r);
    d.record_kernel_ratio(worst);
    guarantee(worst >= Value(3, 4), "kernel solve fell below 3/4 of kernel mms");

    for (const auto& a : agents) {
        VertexList bundle = kernel.expand(solved.bundle_of(a.id));
        guarantee(graphs::is_connected_subset(g, bundle), "expanded bundle is disconnected");
        const Value value = utility_of_set(a, bundle);
        guarantee(value >= alpha * targets.at(a.id), "agent " + std::to_string(a.id) + " below alpha * target");
        out.packing.bundles.push_back({a.id, std::move(bundle)});
        out.per_agent_ratio[a.id] = ratio_or_one(value, targets.at(a.id));
    }
    return out;
}

Allocation allocate_split(const Instance& inst, const Options& options, Diagnostics* diag) {
    const auto witness = graphs::recognize(inst.graph);
    if (!witness.has(graphs::GraphClass::connected) || !witness.has(graphs::GraphClass::split))
        throw ClassMismatch("graph is not a connected split graph");
    const int k = level_for_types(inst.type_count());
    auto solver = [&](const Instance& sub, const reduction::Targets& t) {
        const auto w = graphs::recognize(sub.graph);
        if (!w.split_pair) throw InternalGuaranteeViolation("split: component is not split");
        return allocate_bounded_split(sub.graph, *w.split_pair, sub.agents, t, k, options, diag);
    };
    return reduction::allocate_reduction(inst, alpha_for_level(k), solver, options.oracle).allocation;
}

} // namespace cmms::split
