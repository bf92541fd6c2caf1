#ifndef CMMS_GRAPHS_HPP
#define CMMS_GRAPHS_HPP

#include <optional>
#include <set>
#include <string_view>
#include <utility>
#include <vector>

#include "cmms/instance.hpp"

namespace cmms::graphs {

/// Components sorted internally and ordered by smallest member.
std::vector<VertexList> connected_components(const GoodsGraph& g);

/// Components of the subgraph induced by `subset`, in parent indices.
std::vector<VertexList> connected_components(const GoodsGraph& g, const VertexList& subset);

bool is_connected(const GoodsGraph& g);

/// True for the empty set, singletons and sets inducing a connected subgraph.
bool is_connected_subset(const GoodsGraph& g, const VertexList& s);

bool is_clique(const GoodsGraph& g, const VertexList& s);
bool is_independent(const GoodsGraph& g, const VertexList& s);

/// Induced subgraph on `s` is a single cycle of length >= 3.
bool is_cycle(const GoodsGraph& g, const VertexList& s);

/// Maximal biconnected subgraphs of an arbitrary graph; isolated vertices
/// form singleton blocks. Ordered by smallest member.
std::vector<VertexList> biconnected_blocks(const GoodsGraph& g);

struct BlockCutTree {
    std::vector<VertexList> blocks;
    VertexList cut_vertices;
    std::vector<std::pair<int, VertexIndex>> tree_edges; // (block index, cut vertex)
    std::vector<int> terminal_blocks;

    VertexList cut_vertices_of(int block) const;
};

/// Throws StructuralError when g is disconnected.
BlockCutTree block_cut_tree(const GoodsGraph& g);

enum class GraphClass {
    connected,
    complete,
    cycle,
    tree,
    block_graph,
    cactus,
    block_cactus,
    complete_multipartite,
    split,
};

std::string_view to_string(GraphClass c);

struct SplitPair {
    VertexList clique;
    VertexList independent;
};

struct ClassWitness {
    std::set<GraphClass> flags;
    std::optional<std::vector<VertexList>> parts;
    std::optional<SplitPair> split_pair;

    bool has(GraphClass c) const { return flags.count(c) != 0; }
};

/// Sets every applicable flag. For split graphs the pair maximises the
/// independent side (keeping the clique nonempty); ties go to the
/// lexicographically least clique.
ClassWitness recognize(const GoodsGraph& g);

/// Every valid (clique, independent) split of g, or empty if g is not split.
std::vector<SplitPair> split_partitions(const GoodsGraph& g);

/// Hamiltonian path of a cycle or clique block that ends at `endpoint`.
/// Cliques list the other vertices in id order; cycles start at the
/// endpoint's smaller neighbour and walk around.
VertexList hamiltonian_path_in_block(const VertexList& block, const GoodsGraph& g, VertexIndex endpoint);

} // namespace cmms::graphs

#endif // CMMS_GRAPHS_HPP
