#include "doctest.h"

#include <random>
#include <set>

#include "cmms/errors.hpp"
#include "cmms/graphs.hpp"
#include "cmms/oracle.hpp"
#include "support/fixtures.hpp"
#include "support/naive_oracle.hpp"

using namespace cmms;
using namespace cmms::oracle;

namespace {

void check_witness(const GoodsGraph& g, const Agent& a, const MmsRecord& r) {
    REQUIRE(static_cast<int>(r.witness.bundles.size()) == r.n);
    VertexList seen;
    for (const auto& b : r.witness.bundles) {
        CHECK(graphs::is_connected_subset(g, b.vertices));
        CHECK(utility_of_set(a, b.vertices) >= r.value);
        CHECK(set_intersection(seen, b.vertices).empty());
        seen = set_union(seen, b.vertices);
    }
    if (r.kind == ShareKind::mms) CHECK(r.witness.is_partition(g));
}

} // namespace

TEST_CASE("enumerate_connected_partitions") {
    auto path = fx::graph("a b c", "a-b b-c");
    auto parts = enumerate_connected_partitions(path, 2);
    std::set<std::vector<VertexList>> got(parts.begin(), parts.end());
    CHECK(parts.size() == 3);
    CHECK(got == std::set<std::vector<VertexList>>{{{0, 1, 2}, {}}, {{0}, {1, 2}}, {{0, 1}, {2}}});

    auto k2 = enumerate_connected_partitions(fx::graph("a b", "a-b"), 2);
    CHECK(k2.size() == 2);

    auto whole = enumerate_connected_partitions(path, 1);
    CHECK(whole == std::vector<std::vector<VertexList>>{{{0, 1, 2}}});

    OracleConfig tiny{2};
    CHECK_THROWS_AS(enumerate_connected_partitions(path, 2, tiny), SizeLimitError);
}

TEST_CASE("partition count matches naive filter") {
    for (int m = 1; m <= 6; ++m)
        for (const auto& g : fx::connected_graphs(m))
            for (int n = 1; n <= 3; ++n)
                CHECK(static_cast<long>(enumerate_connected_partitions(g, n).size()) ==
                      naive::count_connected_partitions(g, n));
}

TEST_CASE("mms and pmms differ on a disconnected graph") {
    auto g = fx::graph("x y z", "x-y");
    auto a = fx::agent(1, {2, 2, 1});
    auto m = mms(g, a, 2);
    auto p = pmms(g, a, 2);
    CHECK(m.value == 1);
    CHECK(p.value == 2);
    check_witness(g, a, m);
    check_witness(g, a, p);
    CHECK_THROWS_AS(mms(g, a, 1), UndefinedMms);
}

TEST_CASE("mms examples") {
    auto path = fx::graph("a b c", "a-b b-c");
    CHECK(mms(path, fx::uniform(1, 3), 2).value == 1);
    auto a = fx::agent(1, {Value(1, 2), 3, Value(7, 3)});
    CHECK(mms(path, a, 1).value == Value(35, 6));
    // more bundles than positive vertices
    CHECK(pmms(path, fx::uniform(1, 3), 4).value == 0);
    CHECK(mms(path, fx::uniform(1, 3), 4).value == 0);
}

TEST_CASE("mms and pmms against the naive oracle with random rationals") {
    std::mt19937_64 rng(2024);
    for (int m = 1; m <= 5; ++m)
        for (const auto& g : fx::connected_graphs(m))
            for (int trial = 0; trial < 2; ++trial) {
                std::vector<Value> u;
                for (int v = 0; v < m; ++v) u.push_back(fx::random_rational(rng));
                auto a = fx::agent(1, u);
                for (int n = 1; n <= 3; ++n) {
                    auto rm = mms(g, a, n);
                    auto rp = pmms(g, a, n);
                    CHECK(rm.value == naive::mms(g, u, n));
                    CHECK(rp.value == naive::pmms(g, u, n));
                    CHECK(rm.value == rp.value);
                    check_witness(g, a, rm);
                    check_witness(g, a, rp);
                    CHECK(utility_of_set(a, g.all_vertices()) >= Value(n) * rp.value);
                }
            }
}

TEST_CASE("pmms on disconnected graphs against the naive oracle") {
    std::mt19937_64 rng(5);
    auto g = fx::graph("a b c d e", "a-b c-d d-e");
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Value> u;
        for (int v = 0; v < 5; ++v) u.push_back(fx::random_rational(rng));
        auto a = fx::agent(1, u);
        for (int n = 1; n <= 4; ++n) {
            auto r = pmms(g, a, n);
            CHECK(r.value == naive::pmms(g, u, n));
            check_witness(g, a, r);
            if (n >= 2) CHECK(mms(g, a, n).value == naive::mms(g, u, n));
        }
    }
}

TEST_CASE("pmms is monotone in n") {
    std::mt19937_64 rng(99);
    for (const auto& g : fx::connected_graphs(5)) {
        std::vector<Value> u;
        for (int v = 0; v < 5; ++v) u.push_back(fx::random_rational(rng));
        auto a = fx::agent(1, u);
        for (int n = 2; n <= 4; ++n) CHECK(pmms(g, a, n - 1).value >= pmms(g, a, n).value);
    }
}

TEST_CASE("max_min_ratio_allocation") {
    SUBCASE("triangle, two uniform agents") {
        auto g = fx::graph("a b c", "a-b b-c a-c");
        std::vector<Agent> agents{fx::uniform(1, 3), fx::uniform(2, 3)};
        auto alloc = max_min_ratio_allocation(g, agents, {{1, 1}, {2, 1}});
        CHECK(alloc.per_agent_ratio.at(1) >= 1);
        CHECK(alloc.per_agent_ratio.at(2) >= 1);
        CHECK(alloc.packing.is_partition(g));
    }
    SUBCASE("zero targets are unconstrained") {
        auto g = fx::graph("a b", "a-b");
        std::vector<Agent> agents{fx::agent(1, {1, 1}), fx::agent(2, {0, 0})};
        auto alloc = max_min_ratio_allocation(g, agents, {{1, 2}, {2, 0}});
        CHECK(alloc.per_agent_ratio.at(1) == 1);
        CHECK(alloc.bundle_of(1) == VertexList{0, 1});
    }
    SUBCASE("matches naive optimum on small graphs") {
        std::mt19937_64 rng(17);
        for (int m = 2; m <= 5; ++m)
            for (const auto& g : fx::connected_graphs(m)) {
                std::vector<Agent> agents;
                std::vector<Value> targets;
                std::map<AgentId, Value> tmap;
                for (int i = 1; i <= 3; ++i) {
                    std::vector<Value> u;
                    for (int v = 0; v < m; ++v) u.push_back(fx::random_rational(rng));
                    agents.push_back(fx::agent(i, u));
                    Value t = fx::random_rational(rng);
                    targets.push_back(t);
                    tmap[i] = t;
                }
                auto alloc = max_min_ratio_allocation(g, agents, tmap);
                Value worst = 1;
                bool any = false;
                for (std::size_t k = 0; k < agents.size(); ++k) {
                    auto b = alloc.bundle_of(agents[k].id);
                    CHECK(graphs::is_connected_subset(g, b));
                    if (targets[k].is_zero()) continue;
                    Value r = utility_of_set(agents[k], b) / targets[k];
                    CHECK(alloc.per_agent_ratio.at(agents[k].id) == r);
                    worst = any ? min(worst, r) : r;
                    any = true;
                }
                CHECK(alloc.packing.is_partition(g));
                CHECK(worst == naive::max_min_ratio(g, agents, targets));
            }
    }
    SUBCASE("complete and cycle graphs clear their published bounds") {
        std::mt19937_64 rng(31);
        auto k5 = fx::graph("a b c d e", "a-b a-c a-d a-e b-c b-d b-e c-d c-e d-e");
        auto c6 = fx::graph("a b c d e f", "a-b b-c c-d d-e e-f f-a");
        for (const auto* g : {&k5, &c6}) {
            for (int trial = 0; trial < 10; ++trial) {
                std::vector<Agent> agents;
                std::map<AgentId, Value> t;
                for (int i = 1; i <= 3; ++i) {
                    std::vector<Value> u;
                    for (int v = 0; v < g->size(); ++v) u.push_back(Value(static_cast<int>(rng() % 10)));
                    agents.push_back(fx::agent(i, u));
                    t[i] = mms(*g, agents.back(), 3).value;
                }
                auto alloc = max_min_ratio_allocation(*g, agents, t);
                for (const auto& [id, r] : alloc.per_agent_ratio)
                    CHECK(r >= (g == &k5 ? Value(3, 4) : Value(1, 2)));
            }
        }
    }
}

TEST_CASE("mms_all groups by type") {
    auto g = fx::graph("a b c d", "a-b b-c c-d");
    auto inst = fx::instance(g, {fx::uniform(1, 4, 1, 0), fx::uniform(2, 4, 1, 0), fx::agent(3, {4, 0, 0, 0}, 1)});
    auto recs = mms_all(inst);
    REQUIRE(recs.size() == 3);
    CHECK(recs[0].value == 1);
    CHECK(recs[1].value == 1);
    CHECK(recs[1].agent == 2);
    CHECK(recs[2].value == 0);
    for (const auto& r : recs) CHECK(r.n == 3);
}
