#ifndef CMMS_ORACLE_HPP
#define CMMS_ORACLE_HPP

#include <functional>
#include <map>
#include <vector>

#include "cmms/instance.hpp"

namespace cmms::oracle {

struct OracleConfig {
    /// Largest graph the exhaustive searches accept.
    int max_vertices = 14;
};

enum class ShareKind { mms, pmms };

/// Exact (packing) maximin share with a witness achieving it.
struct MmsRecord {
    AgentId agent = 0;
    int n = 0;
    Value value;
    Packing witness; // exactly n bundles, empty ones allowed
    ShareKind kind = ShareKind::mms;
};

/// Visits every unordered partition of V into at most n nonempty connected
/// sets, padded with empty sets to length n. Parts are listed by smallest
/// member. Return false from `visit` to stop early.
void for_each_connected_partition(const GoodsGraph& g, int n,
                                  const std::function<bool(const std::vector<VertexList>&)>& visit,
                                  const OracleConfig& config = {});

std::vector<std::vector<VertexList>> enumerate_connected_partitions(const GoodsGraph& g, int n,
                                                                   const OracleConfig& config = {});

/// Max over connected n-partitions of the least bundle value. Throws
/// UndefinedMms if g has more than n components.
MmsRecord mms(const GoodsGraph& g, const Agent& agent, int n, const OracleConfig& config = {});

/// Max over connected n-packings of the least bundle value. Defined for
/// every graph.
MmsRecord pmms(const GoodsGraph& g, const Agent& agent, int n, const OracleConfig& config = {});

/// Among all connected partitions into agents.size() bundles (empty bundles
/// allowed) and all assignments of bundles to agents, returns one maximising
/// min_i u_i(A_i) / targets[i]. Agents with a zero target do not constrain
/// the objective. Ties go to the first optimum in search order.
Allocation max_min_ratio_allocation(const GoodsGraph& g, const std::vector<Agent>& agents,
                                    const std::map<AgentId, Value>& targets, const OracleConfig& config = {});

/// One mms record per agent of the instance with n = agent count. Agents of
/// the same type share a single search.
std::vector<MmsRecord> mms_all(const Instance& inst, const OracleConfig& config = {});
std::vector<MmsRecord> pmms_all(const Instance& inst, const OracleConfig& config = {});

} // namespace cmms::oracle

#endif // CMMS_ORACLE_HPP
