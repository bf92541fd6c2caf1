#ifndef CMMS_GENERATORS_HPP
#define CMMS_GENERATORS_HPP

#include <cstdint>
#include <random>
#include <string>

#include "cmms/instance.hpp"

namespace cmms::gen {

enum class Family { block_cactus, multipartite, split };

/// "block-cactus", "multipartite", "split". Throws InvalidInput otherwise.
Family parse_family(const std::string& name);
std::string to_string(Family f);

struct GenSpec {
    Family family = Family::block_cactus;
    std::uint64_t seed = 1;
    int vertices = 8;
    int agents = 2;
    int max_utility = 20;
    /// Number of distinct utility profiles; 0 gives every agent its own.
    int types = 0;
};

/// Deterministic in its arguments. Vertex ids are zero-padded ("v01", ...) so
/// their lexicographic order is numeric. Integer utilities uniform in
/// [0, max_utility]. Throws InvalidInput on infeasible parameters.
Instance generate(const GenSpec& spec);

/// Connected graph built by gluing random cycle and clique blocks onto
/// existing vertices.
GoodsGraph random_block_cactus(std::mt19937_64& rng, int vertices);
/// 2..min(4, vertices) nonempty parts of random sizes.
GoodsGraph random_multipartite(std::mt19937_64& rng, int vertices, int max_parts = 4);
/// Random clique size; each independent vertex joins a random nonempty
/// subset of the clique.
GoodsGraph random_split(std::mt19937_64& rng, int vertices);

std::vector<std::string> vertex_names(int count);

} // namespace cmms::gen

#endif // CMMS_GENERATORS_HPP
