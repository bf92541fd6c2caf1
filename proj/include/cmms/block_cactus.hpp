#ifndef CMMS_BLOCK_CACTUS_HPP
#define CMMS_BLOCK_CACTUS_HPP

#include <vector>

#include "cmms/instance.hpp"
#include "cmms/oracle.hpp"
#include "cmms/reduction.hpp"

// 1/2-mms allocations on connected graphs whose blocks are cycles or cliques.

namespace cmms::blockcactus {

struct Options {
    oracle::OracleConfig oracle;
    /// Re-derive the recursion inequalities with the oracle on every step
    /// whose graph has at most `check_cap` vertices.
    bool check_invariants = false;
    int check_cap = 12;
};

struct Stats {
    int base_cases = 0;
    int case1 = 0;
    int case2 = 0;
    // mms(G', u'_i, n) >= target_i after contraction. Always evaluated,
    // since Case 1 needs those witnesses anyway.
    int case1_checks = 0;
    int case1_violations = 0;
    // mms(G - L, u_i, n - l) >= target_i for agents left after a carve.
    int case2_checks = 0;
    int case2_violations = 0;
    // Every carved segment is worth < target_i to each agent left over.
    int carve_checks = 0;
    int carve_violations = 0;
};

/// A connected block-cactus graph with agents that are 1/2-bounded with
/// respect to their targets.
struct BoundedCallFrame {
    GoodsGraph graph;
    std::vector<Agent> agents;
    reduction::Targets targets;
};

/// Throws ClassMismatch unless the graph is connected and block-cactus.
/// Ratios in the result are against the oracle mms.
Allocation allocate_block_cactus(const Instance& inst, const Options& options = {}, Stats* stats = nullptr);

/// Every agent gets a connected bundle worth >= target_i / 2.
Allocation allocate_bounded(const BoundedCallFrame& frame, const Options& options = {}, Stats* stats = nullptr);

} // namespace cmms::blockcactus

#endif // CMMS_BLOCK_CACTUS_HPP
