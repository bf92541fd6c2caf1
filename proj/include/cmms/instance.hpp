#ifndef CMMS_INSTANCE_HPP
#define CMMS_INSTANCE_HPP

#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "cmms/value.hpp"

namespace cmms {

/// Position of a vertex in its graph's id order. Vertex ids are sorted
/// lexicographically, so comparing indices compares ids.
using VertexIndex = int;

/// Sorted, duplicate-free list of vertex indices.
using VertexList = std::vector<VertexIndex>;

using AgentId = int;

class GoodsGraph;

struct InducedSubgraph;

/// Undirected simple graph whose vertices are the goods.
class GoodsGraph {
public:
    GoodsGraph() = default;

    /// Throws InvalidInput on duplicate ids, self-loops, duplicate edges or
    /// edges naming unknown vertices.
    GoodsGraph(std::vector<std::string> ids, const std::vector<std::pair<std::string, std::string>>& edges);

    /// Edges given by position in `ids` (which need not be sorted).
    static GoodsGraph from_indices(const std::vector<std::string>& ids,
                                   const std::vector<std::pair<int, int>>& edges);

    int size() const { return static_cast<int>(ids_.size()); }
    int edge_count() const { return edge_count_; }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::string& id(VertexIndex v) const { return ids_.at(v); }

    /// Throws InvalidInput for unknown ids.
    VertexIndex index_of(const std::string& id) const;
    bool contains(const std::string& id) const;

    bool adjacent(VertexIndex a, VertexIndex b) const { return adj_matrix_[a * size() + b] != 0; }
    const VertexList& neighbors(VertexIndex v) const { return adj_.at(v); }
    int degree(VertexIndex v) const { return static_cast<int>(adj_.at(v).size()); }

    /// Edge list with a < b, sorted.
    std::vector<std::pair<VertexIndex, VertexIndex>> edges() const;

    VertexList all_vertices() const;

    /// Subgraph induced by `keep` (sorted indices). Ids are preserved.
    InducedSubgraph induced(const VertexList& keep) const;

    std::vector<std::string> ids_of(const VertexList& vs) const;

private:
    void build(const std::vector<std::pair<int, int>>& edges);

    std::vector<std::string> ids_;
    std::vector<VertexList> adj_;
    std::vector<unsigned char> adj_matrix_;
    int edge_count_ = 0;
};

struct InducedSubgraph {
    GoodsGraph graph;
    VertexList to_parent; // sub index -> parent index
};

struct Agent {
    AgentId id = 0;
    int type_id = 0;
    std::vector<Value> utility; // indexed by VertexIndex

    const Value& operator()(VertexIndex v) const { return utility.at(v); }
};

struct Instance {
    GoodsGraph graph;
    std::vector<Agent> agents;

    int agent_count() const { return static_cast<int>(agents.size()); }
    const Agent& agent(AgentId id) const;

    /// Induced on `keep`, keeping only agents listed in `agent_ids` (original
    /// ids preserved, utilities restricted).
    Instance restrict_to(const VertexList& keep, const std::vector<AgentId>& agent_ids) const;
    std::vector<AgentId> agent_ids() const;
    int type_count() const;
};

/// Exact sum of the agent's utilities over `s`; 0 for the empty set.
/// Throws InvalidInput on an out-of-range index.
Value utility_of_set(const Agent& agent, std::span<const VertexIndex> s);

/// Same, addressing vertices by id.
Value utility_of_set(const GoodsGraph& graph, const Agent& agent, const std::vector<std::string>& ids);

/// Empty report means the instance is well formed.
std::vector<std::string> validate_instance(const Instance& inst);

/// True iff every vertex is worth strictly less than alpha * mms_value to
/// the agent. Always false when mms_value is zero.
bool is_alpha_bounded(const Instance& inst, const Agent& agent, const Value& alpha, const Value& mms_value);

struct Bundle {
    AgentId agent = 0; // 0 for bundles not owned by an agent (oracle witnesses)
    VertexList vertices;

    bool operator==(const Bundle&) const = default;
};

/// Pairwise disjoint bundles. Validity with respect to connectivity is
/// checked by graphs/verify, not on construction.
struct Packing {
    std::vector<Bundle> bundles;

    bool is_partition(const GoodsGraph& graph) const;
    VertexList covered() const;
    /// Empty list when the agent has no bundle.
    VertexList bundle_of(AgentId agent) const;
    bool has_agent(AgentId agent) const;
};

struct Allocation {
    Packing packing;
    Value target_alpha;
    std::map<AgentId, Value> per_agent_ratio;

    VertexList bundle_of(AgentId agent) const { return packing.bundle_of(agent); }
};

/// value/target, or 1 when target is zero.
Value ratio_or_one(const Value& value, const Value& target);

VertexList set_union(const VertexList& a, const VertexList& b);
VertexList set_difference(const VertexList& a, const VertexList& b);
VertexList set_intersection(const VertexList& a, const VertexList& b);

} // namespace cmms

#endif // CMMS_INSTANCE_HPP
