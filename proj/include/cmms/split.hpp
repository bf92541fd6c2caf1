#ifndef CMMS_SPLIT_HPP
#define CMMS_SPLIT_HPP

#include <map>
#include <optional>
#include <vector>

#include "cmms/graphs.hpp"
#include "cmms/instance.hpp"
#include "cmms/oracle.hpp"
#include "cmms/reduction.hpp"

// 3/(7*2^k - 3)-mms allocations on connected split graphs whose agents come
// in at most 2^k types.

namespace cmms::split {

/// beta(k, 0) = 1, beta(k, l+1) = (beta(k, l) - 3/(7*2^k - 3)) / 2.
Value beta(int k, int ell);

/// ceil(log2 p), 0 for p = 1.
int level_for_types(int p);

/// 3/(7*2^k - 3).
Value alpha_for_level(int k);

struct PackingSequence {
    std::vector<Packing> packings;
    int level = 0;
    Value beta = 1;
};

struct Diagnostics {
    long merges = 0;
    // Sorted-sequence domination u(w_j) >= u(v_2j) for a merged bundle P
    // inside its source bundle Q.
    long domination_checks = 0;
    long domination_violations = 0;
    // u(P) >= (u(Q) - u(v_1)) / 2.
    long halving_checks = 0;
    long halving_violations = 0;
    // u'_i(P_j & K) = u_i(P_j), literally. Fails whenever another type's
    // independent vertices anchor inside P_j and are worth something to i.
    long preservation_checks = 0;
    long preservation_literal_failures = 0;
    // mms(K, u'_i) >= beta(k, k) * mms(G, u_i).
    long kernel_lift_checks = 0;
    long kernel_lift_violations = 0;
    // Least min-ratio the kernel solve achieved against kernel mms.
    std::optional<Value> min_kernel_ratio;
    long kernel_solves = 0;
    // Independent vertices that no final packing covers.
    long uncovered_independent = 0;

    void record_kernel_ratio(const Value& r);
};

/// One step of the halving procedure. `owners[i]` is the utility owner of
/// packing i of the concatenation left ++ right. Each vertex of `independent`
/// must lie in bundles of exactly two packings of the concatenation
/// (StructuralError otherwise). Deterministic: the first pick is the lowest
/// (packing, bundle) pair, value ties go to the smaller vertex, the chain
/// follows twins and restarts from the front when it ends.
PackingSequence merge_packings(const PackingSequence& left, const PackingSequence& right,
                               const std::vector<Agent>& owners, const VertexList& independent, int k,
                               Diagnostics* diag = nullptr);

/// `types` holds 2^k representative agents, `partitions[i]` an mms-partition
/// of G for types[i] and `mms_values[i]` its value. Checks the per-level
/// bundle bound and the exactly-one-cover property, throwing
/// InternalGuaranteeViolation on failure.
PackingSequence build_packing_sequence(const GoodsGraph& g, const graphs::SplitPair& split_pair,
                                       const std::vector<Agent>& types, const std::vector<Packing>& partitions,
                                       const std::vector<Value>& mms_values, int k, Diagnostics* diag = nullptr);

struct KernelInstance {
    GoodsGraph kernel;                  // induced on K
    VertexList to_parent;               // kernel index -> G index
    std::map<VertexIndex, VertexIndex> anchor; // v in I -> n_v in K (G indices)
    std::vector<VertexList> attached;   // N_w per kernel index, G indices
    std::vector<Agent> agents;          // u'_i on the kernel, same ids and types

    /// Kernel vertices mapped back to G plus everything anchored to them.
    VertexList expand(const VertexList& kernel_bundle) const;
};

/// Anchors every covered I-vertex at its smallest K-neighbour inside its
/// bundle and folds its value into that anchor for every agent. Throws
/// InternalGuaranteeViolation on a bundle that is a single I-vertex.
KernelInstance contract_to_kernel(const GoodsGraph& g, const graphs::SplitPair& split_pair,
                                  const PackingSequence& seq, const std::vector<Agent>& agents);

/// Checks, for each packing S_i against its owner type i and each bundle
/// P_j, that u'_i(P_j & K) = u_i(P_j) + u_i(F_j) exactly, where F_j are the
/// I-vertices outside P_j anchored inside it (InternalGuaranteeViolation
/// otherwise), and counts how often F_j is worth something so the literal
/// identity fails.
void check_preservation(const GoodsGraph& g, const graphs::SplitPair& split_pair, const PackingSequence& seq,
                        const std::vector<Agent>& owners, const KernelInstance& kernel, Diagnostics& diag);

struct Options {
    oracle::OracleConfig oracle;
};

/// Connected split graph, agents 3/(7*2^k-3)-bounded w.r.t. their targets.
Allocation allocate_bounded_split(const GoodsGraph& g, const graphs::SplitPair& split_pair,
                                  const std::vector<Agent>& agents, const reduction::Targets& targets, int k,
                                  const Options& options = {}, Diagnostics* diag = nullptr);

/// Throws ClassMismatch unless the graph is connected and split. Ratios in
/// the result are against the oracle mms.
Allocation allocate_split(const Instance& inst, const Options& options = {}, Diagnostics* diag = nullptr);

} // namespace cmms::split

#endif // CMMS_SPLIT_HPP
