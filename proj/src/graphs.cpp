#include "cmms/graphs.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "cmms/errors.hpp"

namespace cmms::graphs {

std::vector<VertexList> connected_components(const GoodsGraph& g) { return connected_components(g, g.all_vertices()); }

std::vector<VertexList> connected_components(const GoodsGraph& g, const VertexList& subset) {
    std::vector<char> inside(g.size(), 0), seen(g.size(), 0);
    for (VertexIndex v : subset) inside.at(v) = 1;
    std::vector<VertexList> out;
    for (VertexIndex s : subset) {
        if (seen[s]) continue;
        VertexList comp{s};
        seen[s] = 1;
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (VertexIndex w : g.neighbors(comp[head]))
                if (inside[w] && !seen[w]) {
                    seen[w] = 1;
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    std::sort(out.begin(), out.end(), [](const VertexList& a, const VertexList& b) { return a.front() < b.front(); });
    return out;
}

bool is_connected(const GoodsGraph& g) { return g.size() <= 1 || connected_components(g).size() == 1; }

bool is_connected_subset(const GoodsGraph& g, const VertexList& s) {
    if (s.size() <= 1) return true;
    return connected_components(g, s).size() == 1;
}

bool is_clique(const GoodsGraph& g, const VertexList& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (!g.adjacent(s[i], s[j])) return false;
    return true;
}

bool is_independent(const GoodsGraph& g, const VertexList& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (g.adjacent(s[i], s[j])) return false;
    return true;
}

bool is_cycle(const GoodsGraph& g, const VertexList& s) {
    if (s.size() < 3 || !is_connected_subset(g, s)) return false;
    std::vector<char> inside(g.size(), 0);
    for (VertexIndex v : s) inside[v] = 1;
    for (VertexIndex v : s) {
        int d = 0;
        for (VertexIndex w : g.neighbors(v)) d += inside[w];
        if (d != 2) return false;
    }
    return true;
}

std::vector<VertexList> biconnected_blocks(const GoodsGraph& g) {
    const int n = g.size();
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<std::pair<VertexIndex, VertexIndex>> edge_stack;
    std::vector<VertexList> blocks;
    int timer = 0;

    std::function<void(VertexIndex, VertexIndex)> dfs = [&](VertexIndex v, VertexIndex parent) {
        disc[v] = low[v] = timer++;
        for (VertexIndex w : g.neighbors(v)) {
            if (w == parent) continue;
            if (disc[w] < 0) {
                edge_stack.emplace_back(v, w);
                dfs(w, v);
                low[v] = std::min(low[v], low[w]);
                if (low[w] >= disc[v]) {
                    VertexList block;
                    while (true) {
                        auto [a, b] = edge_stack.back();
                        edge_stack.pop_back();
                        block.push_back(a);
                        block.push_back(b);
                        if (a == v && b == w) break;
                    }
                    std::sort(block.begin(), block.end());
                    block.erase(std::unique(block.begin(), block.end()), block.end());
                    blocks.push_back(std::move(block));
                }
            } else if (disc[w] < disc[v]) {
                edge_stack.emplace_back(v, w);
                low[v] = std::min(low[v], disc[w]);
            }
        }
    };

    for (VertexIndex v = 0; v < n; ++v) {
        if (disc[v] >= 0) continue;
        if (g.degree(v) == 0) {
            disc[v] = timer++;
            blocks.push_back({v});
            continue;
        }
        dfs(v, -1);
    }
    std::sort(blocks.begin(), blocks.end());
    return blocks;
}

VertexList BlockCutTree::cut_vertices_of(int block) const {
    VertexList out;
    for (auto [b, c] : tree_edges)
        if (b == block) out.push_back(c);
    std::sort(out.begin(), out.end());
    return out;
}

BlockCutTree block_cut_tree(const GoodsGraph& g) {
    if (g.size() == 0 || !is_connected(g)) throw StructuralError("block-cut tree needs a connected, nonempty graph");
    BlockCutTree t;
    t.blocks = biconnected_blocks(g);
    std::vector<int> membership(g.size(), 0);
    for (const auto& b : t.blocks)
        for (VertexIndex v : b) ++membership[v];
    for (VertexIndex v = 0; v < g.size(); ++v)
        if (membership[v] > 1) t.cut_vertices.push_back(v);
    std::vector<int> tree_degree(t.blocks.size(), 0);
    for (int b = 0; b < static_cast<int>(t.blocks.size()); ++b)
        for (VertexIndex v : t.blocks[b])
            if (membership[v] > 1) {
                t.tree_edges.emplace_back(b, v);
                ++tree_degree[b];
            }
    for (int b = 0; b < static_cast<int>(t.blocks.size()); ++b)
        if (tree_degree[b] <= 1) t.terminal_blocks.push_back(b);
    return t;
}

std::string_view to_string(GraphClass c) {
    switch (c) {
    case GraphClass::connected: return "connected";
    case GraphClass::complete: return "complete";
    case GraphClass::cycle: return "cycle";
    case GraphClass::tree: return "tree";
    case GraphClass::block_graph: return "block_graph";
    case GraphClass::cactus: return "cactus";
    case GraphClass::block_cactus: return "block_cactus";
    case GraphClass::complete_multipartite: return "complete_multipartite";
    case GraphClass::split: return "split";
    }
    return "?";
}

namespace {

std::optional<std::vector<VertexList>> multipartite_parts(const GoodsGraph& g) {
    const int n = g.size();
    if (n == 0) return std::nullopt;
    std::vector<int> part(n, -1);
    std::vector<VertexList> parts;
    for (VertexIndex s = 0; s < n; ++s) {
        if (part[s] >= 0) continue;
        VertexList comp{s};
        part[s] = static_cast<int>(parts.size());
        for (std::size_t head = 0; head < comp.size(); ++head)
            for (VertexIndex w = 0; w < n; ++w)
                if (w != comp[head] && part[w] < 0 && !g.adjacent(comp[head], w)) {
                    part[w] = part[s];
                    comp.push_back(w);
                }
        std::sort(comp.begin(), comp.end());
        parts.push_back(std::move(comp));
    }
    for (const auto& p : parts)
        if (!is_independent(g, p)) return std::nullopt;
    return parts;
}

} // namespace

std::vector<SplitPair> split_partitions(const GoodsGraph& g) {
    const int n = g.size();
    if (n == 0) return {{}};
    // Hammer-Simeone: the m highest-degree vertices form the clique side of
    // some split partition whenever one exists.
    VertexList order = g.all_vertices();
    std::stable_sort(order.begin(), order.end(), [&](VertexIndex a, VertexIndex b) { return g.degree(a) > g.degree(b); });
    int m = 0;
    for (int i = 0; i < n; ++i)
        if (g.degree(order[i]) >= i) m = i + 1;
    VertexList k0(order.begin(), order.begin() + m), i0(order.begin() + m, order.end());
    std::sort(k0.begin(), k0.end());
    std::sort(i0.begin(), i0.end());
    if (!is_clique(g, k0) || !is_independent(g, i0)) return {};

    // Any other split differs from (k0, i0) by moving at most one vertex each way.
    std::vector<SplitPair> out;
    auto consider = [&](VertexList k) {
        std::sort(k.begin(), k.end());
        VertexList rest = set_difference(g.all_vertices(), k);
        if (is_clique(g, k) && is_independent(g, rest)) out.push_back({std::move(k), std::move(rest)});
    };
    std::vector<std::optional<VertexIndex>> drops{std::nullopt}, adds{std::nullopt};
    for (VertexIndex v : k0) drops.emplace_back(v);
    for (VertexIndex v : i0) adds.emplace_back(v);
    for (auto d : drops)
        for (auto a : adds) {
            VertexList k;
            for (VertexIndex v : k0)
                if (!d || v != *d) k.push_back(v);
            if (a) k.push_back(*a);
            consider(std::move(k));
        }
    std::sort(out.begin(), out.end(), [](const SplitPair& a, const SplitPair& b) { return a.clique < b.clique; });
    out.erase(std::unique(out.begin(), out.end(), [](const SplitPair& a, const SplitPair& b) { return a.clique == b.clique; }),
              out.end());
    return out;
}

ClassWitness recognize(const GoodsGraph& g) {
    ClassWitness w;
    const int n = g.size();
    const bool connected = is_connected(g);
    if (connected) w.flags.insert(GraphClass::connected);
    if (is_clique(g, g.all_vertices())) w.flags.insert(GraphClass::complete);
    if (connected && is_cycle(g, g.all_vertices())) w.flags.insert(GraphClass::cycle);
    if (connected && n >= 1 && g.edge_count() == n - 1) w.flags.insert(GraphClass::tree);

    bool all_clique = true, all_cycle_or_edge = true, all_cycle_or_clique = true;
    for (const auto& b : biconnected_blocks(g)) {
        const bool clique = is_clique(g, b);
        const bool cyc = is_cycle(g, b);
        all_clique &= clique;
        all_cycle_or_edge &= cyc || b.size() <= 2;
        all_cycle_or_clique &= cyc || clique;
    }
    if (all_clique) w.flags.insert(GraphClass::block_graph);
    if (all_cycle_or_edge) w.flags.insert(GraphClass::cactus);
    if (all_cycle_or_clique) w.flags.insert(GraphClass::block_cactus);

    if (auto parts = multipartite_parts(g)) {
        w.flags.insert(GraphClass::complete_multipartite);
        w.parts = std::move(parts);
    }

    auto splits = split_partitions(g);
    if (!splits.empty()) {
        w.flags.insert(GraphClass::split);
        const SplitPair* best = nullptr;
        for (const auto& s : splits) {
            if (n > 0 && s.clique.empty()) continue;
            if (!best || s.clique.size() < best->clique.size()) best = &s; // sorted, so first of each size wins
        }
        w.split_pair = best ? *best : splits.front();
    }
    return w;
}

VertexList hamiltonian_path_in_block(const VertexList& block, const GoodsGraph& g, VertexIndex endpoint) {
    if (!std::binary_search(block.begin(), block.end(), endpoint))
        throw InvalidInput("endpoint '" + g.id(endpoint) + "' is not in the block");
    if (is_clique(g, block)) { // includes triangles
        VertexList path;
        for (VertexIndex v : block)
            if (v != endpoint) path.push_back(v);
        path.push_back(endpoint);
        return path;
    }
    if (!is_cycle(g, block)) throw UnsupportedBlock("block is neither a cycle nor a clique");
    std::vector<char> inside(g.size(), 0);
    for (VertexIndex v : block) inside[v] = 1;
    VertexIndex start = -1;
    for (VertexIndex w : g.neighbors(endpoint))
        if (inside[w]) {
            start = w;
            break;
        }
    VertexList path{start};
    VertexIndex prev = endpoint, cur = start;
    while (cur != endpoint) {
        VertexIndex next = -1;
        for (VertexIndex w : g.neighbors(cur))
            if (inside[w] && w != prev) {
                next = w;
                break;
            }
        prev = cur;
        cur = next;
        path.push_back(cur);
    }
    return path;
}

} // namespace cmms::graphs
