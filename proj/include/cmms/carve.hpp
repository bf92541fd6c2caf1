#ifndef CMMS_CARVE_HPP
#define CMMS_CARVE_HPP

#include <map>
#include <vector>

#include "cmms/instance.hpp"

namespace cmms {

struct CarveResult {
    struct Segment {
        AgentId agent = 0;
        std::vector<VertexIndex> vertices; // contiguous in the carve order
    };
    std::vector<Segment> assignments;
    std::vector<VertexIndex> leftover; // unconsumed suffix of the order
    std::vector<AgentId> served;       // in serving order
};

/// Scans `order` left to right. As soon as the current segment is worth at
/// least her threshold to some pooled agent, it goes to the smallest such id
/// and a new segment starts. With reserve_last the final vertex of `order`
/// is never consumed. Stops when the pool is empty or the order runs out.
/// `agents` supplies utilities for every pooled id.
CarveResult greedy_prefix_carve(const std::vector<VertexIndex>& order, const std::vector<AgentId>& pool,
                                const std::map<AgentId, Value>& thresholds, const std::vector<Agent>& agents,
                                bool reserve_last);

} // namespace cmms

#endif // CMMS_CARVE_HPP
