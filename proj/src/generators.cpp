#include "cmms/generators.hpp"

#include <algorithm>
#include <numeric>

#include "cmms/errors.hpp"

namespace cmms::gen {

namespace {

int uniform_int(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

} // namespace

Family parse_family(const std::string& name) {
    if (name == "block-cactus") return Family::block_cactus;
    if (name == "multipartite") return Family::multipartite;
    if (name == "split") return Family::split;
    throw InvalidInput("unknown graph class '" + name + "'");
}

std::string to_string(Family f) {
    switch (f) {
    case Family::block_cactus: return "block-cactus";
    case Family::multipartite: return "multipartite";
    case Family::split: return "split";
    }
    return "?";
}

std::vector<std::string> vertex_names(int count) {
    const int width = static_cast<int>(std::to_string(std::max(count, 1)).size());
    std::vector<std::string> out;
    for (int i = 1; i <= count; ++i) {
        std::string digits = std::to_string(i);
        out.push_back("v" + std::string(width - digits.size(), '0') + digits);
    }
    return out;
}

GoodsGraph random_block_cactus(std::mt19937_64& rng, int vertices) {
    if (vertices < 1) throw InvalidInput("need at least one vertex");
    std::vector<std::pair<int, int>> edges;
    int used = 1;
    while (used < vertices) {
        const int attach = uniform_int(rng, 0, used - 1);
        const int size = uniform_int(rng, 2, std::min(5, vertices - used + 1));
        std::vector<int> block{attach};
        for (int i = 0; i < size - 1; ++i) block.push_back(used++);
        if (size >= 4 && uniform_int(rng, 0, 1) == 0) {
            for (int i = 0; i < size; ++i) edges.emplace_back(block[i], block[(i + 1) % size]);
        } else {
            for (int i = 0; i < size; ++i)
                for (int j = i + 1; j < size; ++j) edges.emplace_back(block[i], block[j]);
        }
    }
    return GoodsGraph::from_indices(vertex_names(vertices), edges);
}

GoodsGraph random_multipartite(std::mt19937_64& rng, int vertices, int max_parts) {
    if (vertices < 2) throw InvalidInput("a complete multipartite graph needs at least two vertices");
    const int parts = uniform_int(rng, 2, std::min(max_parts, vertices));
    std::vector<int> order(vertices);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    // Cut points splitting the shuffled order into `parts` nonempty runs.
    std::vector<int> cuts(vertices - 1);
    std::iota(cuts.begin(), cuts.end(), 1);
    std::shuffle(cuts.begin(), cuts.end(), rng);
    cuts.resize(parts - 1);
    std::sort(cuts.begin(), cuts.end());
    std::vector<int> label(vertices);
    for (int i = 0, p = 0; i < vertices; ++i) {
        while (p < parts - 1 && i >= cuts[p]) ++p;
        label[order[i]] = p;
    }
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < vertices; ++a)
        for (int b = a + 1; b < vertices; ++b)
            if (label[a] != label[b]) edges.emplace_back(a, b);
    return GoodsGraph::from_indices(vertex_names(vertices), edges);
}

GoodsGraph random_split(std::mt19937_64& rng, int vertices) {
    if (vertices < 1) throw InvalidInput("need at least one vertex");
    const int clique = uniform_int(rng, 1, vertices);
    std::vector<int> order(vertices);
    std::iota(order.begin(), order.end(), 0);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::pair<int, int>> edges;
    for (int a = 0; a < clique; ++a)
        for (int b = a + 1; b < clique; ++b) edges.emplace_back(order[a], order[b]);
    for (int i = clique; i < vertices; ++i) {
        std::vector<int> nbrs;
        for (int c = 0; c < clique; ++c)
            if (uniform_int(rng, 0, 1)) nbrs.push_back(c);
        if (nbrs.empty()) nbrs.push_back(uniform_int(rng, 0, clique - 1));
        for (int c : nbrs) edges.emplace_back(order[i], order[c]);
    }
    return GoodsGraph::from_indices(vertex_names(vertices), edges);
}

Instance generate(const GenSpec& spec) {
    if (spec.vertices < 1 || spec.vertices > 63) throw InvalidInput("vertices must be in [1, 63]");
    if (spec.agents < 1) throw InvalidInput("need at least one agent");
    if (spec.max_utility < 0) throw InvalidInput("max utility must be nonnegative");
    if (spec.types < 0) throw InvalidInput("types must be nonnegative");
    std::mt19937_64 rng(spec.seed);
    Instance inst;
    switch (spec.family) {
    case Family::block_cactus: inst.graph = random_block_cactus(rng, spec.vertices); break;
    case Family::multipartite: inst.graph = random_multipartite(rng, spec.vertices); break;
    case Family::split: inst.graph = random_split(rng, spec.vertices); break;
    }
    const int profiles = spec.types == 0 ? spec.agents : std::min(spec.types, spec.agents);
    std::vector<std::vector<Value>> utilities(profiles);
    for (auto& u : utilities)
        for (int v = 0; v < spec.vertices; ++v) u.push_back(Value(uniform_int(rng, 0, spec.max_utility)));
    for (int i = 1; i <= spec.agents; ++i) {
        const int type = (i - 1) % profiles;
        inst.agents.push_back(Agent{i, type, utilities[type]});
    }
    return inst;
}

} // namespace cmms::gen
