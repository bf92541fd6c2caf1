#ifndef CMMS_MULTIPARTITE_HPP
#define CMMS_MULTIPARTITE_HPP

#include <vector>

#include "cmms/instance.hpp"
#include "cmms/oracle.hpp"
#include "cmms/reduction.hpp"

// 1/4-mms allocations on complete multipartite graphs with at least two parts.

namespace cmms::multipartite {

struct BipartSplit {
    VertexList v1, v2;
    std::vector<AgentId> n1, n2;
    int ell = 0; // number of (sorted) parts merged into v1
};

struct Stats {
    int bounded_calls = 0;
    // Each carved segment is worth < target_j / 2 to every agent still
    // active when it was cut.
    int carve_checks = 0;
    int carve_violations = 0;
};

/// Parts sorted by size, ties by smallest member; v1 takes the shortest
/// prefix holding at least n vertices. Agents prefer the side they value
/// more (ties to v1). Throws InternalGuaranteeViolation when the prefix
/// would need every part.
BipartSplit split_sides(const std::vector<VertexList>& parts, const std::vector<Agent>& agents);

/// Agents must be 1/4-bounded with respect to their targets. Returns a
/// partition of V in which every agent's bundle is worth >= target / 4.
/// Every structural step the construction relies on is asserted and
/// reported as InternalGuaranteeViolation.
Allocation allocate_bounded_multipartite(const GoodsGraph& g, const std::vector<VertexList>& parts,
                                         const std::vector<Agent>& agents, const reduction::Targets& targets,
                                         Stats* stats = nullptr);

/// Throws ClassMismatch unless the graph is complete multipartite with at
/// least two parts. Ratios in the result are against the oracle mms.
Allocation allocate_multipartite(const Instance& inst, const oracle::OracleConfig& config = {},
                                 Stats* stats = nullptr);

} // namespace cmms::multipartite

#endif // CMMS_MULTIPARTITE_HPP
