#ifndef CMMS_TESTS_FIXTURES_HPP
#define CMMS_TESTS_FIXTURES_HPP

#include <random>
#include <string>
#include <vector>

#include "cmms/instance.hpp"

namespace fx {

/// graph("a b c", "a-b b-c")
cmms::GoodsGraph graph(const std::string& vertices, const std::string& edges);

/// Utilities listed in vertex-id order. type defaults to the agent id.
cmms::Agent agent(int id, std::vector<cmms::Value> u, int type = -1);
cmms::Agent uniform(int id, int vertices, cmms::Value v = 1, int type = 0);

cmms::Instance instance(cmms::GoodsGraph g, std::vector<cmms::Agent> agents);

/// n agents of a single type valuing every vertex at 1.
cmms::Instance uniform_instance(cmms::GoodsGraph g, int n);

cmms::VertexList ids(const cmms::GoodsGraph& g, const std::string& names);

/// One representative per isomorphism class of connected graphs on exactly
/// m vertices, ids "a".."f".
std::vector<cmms::GoodsGraph> connected_graphs(int m);

/// p/q with p in [0, 9] and q in [1, 4].
cmms::Value random_rational(std::mt19937_64& rng);

} // namespace fx

#endif
