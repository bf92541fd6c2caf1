#include "support/fixtures.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>

#include "support/naive_oracle.hpp"

namespace fx {

cmms::GoodsGraph graph(const std::string& vertices, const std::string& edges) {
    std::vector<std::string> ids;
    std::istringstream vs(vertices);
    for (std::string id; vs >> id;) ids.push_back(id);
    std::vector<std::pair<std::string, std::string>> es;
    std::istringstream in(edges);
    for (std::string e; in >> e;) {
        auto dash = e.find('-');
        es.emplace_back(e.substr(0, dash), e.substr(dash + 1));
    }
    return cmms::GoodsGraph(ids, es);
}

cmms::Agent agent(int id, std::vector<cmms::Value> u, int type) {
    return cmms::Agent{id, type < 0 ? id : type, std::move(u)};
}

cmms::Agent uniform(int id, int vertices, cmms::Value v, int type) {
    return cmms::Agent{id, type, std::vector<cmms::Value>(vertices, v)};
}

cmms::Instance instance(cmms::GoodsGraph g, std::vector<cmms::Agent> agents) {
    return cmms::Instance{std::move(g), std::move(agents)};
}

cmms::Instance uniform_instance(cmms::GoodsGraph g, int n) {
    std::vector<cmms::Agent> agents;
    for (int i = 1; i <= n; ++i) agents.push_back(uniform(i, g.size()));
    return instance(std::move(g), std::move(agents));
}

cmms::VertexList ids(const cmms::GoodsGraph& g, const std::string& names) {
    cmms::VertexList out;
    std::istringstream in(names);
    for (std::string id; in >> id;) out.push_back(g.index_of(id));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<cmms::GoodsGraph> connected_graphs(int m) {
    std::vector<std::pair<int, int>> pairs;
    std::vector<std::vector<int>> index(m, std::vector<int>(m, -1));
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            index[a][b] = index[b][a] = static_cast<int>(pairs.size());
            pairs.emplace_back(a, b);
        }
    const int e = static_cast<int>(pairs.size());

    std::vector<std::string> names;
    for (int v = 0; v < m; ++v) names.emplace_back(1, static_cast<char>('a' + v));

    // Canonical form: least edge mask over relabelings that list vertices by
    // nonincreasing degree. Isomorphic graphs share that set of relabelings.
    std::set<unsigned> seen;
    std::vector<cmms::GoodsGraph> out;
    std::vector<unsigned> adj(m);
    for (unsigned mask = 0; mask < (1u << e); ++mask) {
        std::fill(adj.begin(), adj.end(), 0u);
        for (int k = 0; k < e; ++k)
            if (mask & (1u << k)) {
                adj[pairs[k].first] |= 1u << pairs[k].second;
                adj[pairs[k].second] |= 1u << pairs[k].first;
            }
        unsigned reach = 1, frontier = 1;
        while (frontier) {
            unsigned next = 0;
            for (int v = 0; v < m; ++v)
                if (frontier & (1u << v)) next |= adj[v];
            frontier = next & ~reach;
            reach |= next;
        }
        if (reach != (1u << m) - 1) continue;

        std::vector<int> order(m);
        std::iota(order.begin(), order.end(), 0);
        auto deg = [&](int v) { return __builtin_popcount(adj[v]); };
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return deg(a) != deg(b) ? deg(a) > deg(b) : a < b;
        });
        // Runs of equal degree may be permuted freely.
        std::vector<std::pair<int, int>> runs;
        for (int i = 0; i < m;) {
            int j = i;
            while (j < m && deg(order[j]) == deg(order[i])) ++j;
            runs.emplace_back(i, j);
            i = j;
        }
        unsigned canon = ~0u;
        std::vector<int> pos(m);
        std::function<void(std::size_t)> rec = [&](std::size_t r) {
            if (r == runs.size()) {
                for (int i = 0; i < m; ++i) pos[order[i]] = i;
                unsigned img = 0;
                for (int k = 0; k < e; ++k)
                    if (mask & (1u << k)) img |= 1u << index[pos[pairs[k].first]][pos[pairs[k].second]];
                canon = std::min(canon, img);
                return;
            }
            auto first = order.begin() + runs[r].first, last = order.begin() + runs[r].second;
            std::sort(first, last);
            do rec(r + 1);
            while (std::next_permutation(first, last));
        };
        rec(0);
        if (!seen.insert(canon).second) continue;
        std::vector<std::pair<int, int>> es;
        for (int k = 0; k < e; ++k)
            if (mask & (1u << k)) es.push_back(pairs[k]);
        out.push_back(cmms::GoodsGraph::from_indices(names, es));
    }
    return out;
}

cmms::Value random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(0, 9), den(1, 4);
    return cmms::Value(num(rng), den(rng));
}

} // namespace fx
