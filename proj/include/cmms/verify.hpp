#ifndef CMMS_VERIFY_HPP
#define CMMS_VERIFY_HPP

#include <string>
#include <vector>

#include "cmms/instance.hpp"
#include "cmms/oracle.hpp"

// Allocator-independent audit: only core types, graph predicates and the
// supplied mms records are consulted.

namespace cmms::verify {

struct AgentLine {
    AgentId agent = 0;
    VertexList bundle;
    Value value;
    Value mms;
    Value ratio; // value / mms, or 1 when mms is 0
};

struct Certificate {
    Value alpha_target;
    std::vector<AgentLine> per_agent;
    Value min_ratio = 1;
    bool structural_ok = true;
    std::vector<std::string> notes;

    bool passed() const { return structural_ok && min_ratio >= alpha_target; }
};

Certificate check_allocation(const Instance& inst, const Allocation& alloc, const Value& alpha,
                             const std::vector<oracle::MmsRecord>& mms_records);

/// Least per-agent ratio; throws InvalidInput if the allocation is not
/// structurally valid.
Value empirical_alpha(const Instance& inst, const Allocation& alloc, const std::vector<oracle::MmsRecord>& mms_records);

} // namespace cmms::verify

#endif // CMMS_VERIFY_HPP
