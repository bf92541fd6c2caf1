#include "doctest.h"

#include <random>

#include "cmms/carve.hpp"
#include "support/fixtures.hpp"

using namespace cmms;

TEST_CASE("greedy_prefix_carve examples") {
    std::vector<Agent> one{fx::uniform(1, 3)};
    auto r = greedy_prefix_carve({0, 1, 2}, {1}, {{1, 2}}, one, false);
    REQUIRE(r.assignments.size() == 1);
    CHECK(r.assignments[0].agent == 1);
    CHECK(r.assignments[0].vertices == std::vector<VertexIndex>{0, 1});
    CHECK(r.leftover == std::vector<VertexIndex>{2});

    auto reserved = greedy_prefix_carve({0, 1, 2}, {1}, {{1, 2}}, one, true);
    CHECK(reserved.assignments[0].vertices == std::vector<VertexIndex>{0, 1});
    CHECK(reserved.leftover == std::vector<VertexIndex>{2});

    std::vector<Agent> two{fx::uniform(1, 4), fx::uniform(2, 4)};
    auto t = greedy_prefix_carve({0, 1, 2, 3}, {1, 2}, {{1, 1}, {2, 1}}, two, false);
    REQUIRE(t.assignments.size() == 2);
    CHECK(t.assignments[0].agent == 1);
    CHECK(t.assignments[0].vertices == std::vector<VertexIndex>{0});
    CHECK(t.assignments[1].agent == 2);
    CHECK(t.assignments[1].vertices == std::vector<VertexIndex>{1});
    CHECK(t.leftover == std::vector<VertexIndex>{2, 3});
    CHECK(t.served == std::vector<AgentId>{1, 2});
}

TEST_CASE("reserve_last never consumes the final vertex") {
    std::vector<Agent> one{fx::agent(1, {0, 0, 5})};
    auto r = greedy_prefix_carve({0, 1, 2}, {1}, {{1, 1}}, one, true);
    CHECK(r.assignments.empty());
    CHECK(r.leftover == std::vector<VertexIndex>{0, 1, 2});
    auto s = greedy_prefix_carve({0, 1, 2}, {1}, {{1, 1}}, one, false);
    CHECK(s.assignments.size() == 1);
}

TEST_CASE("carve minimality, segment bound and determinism") {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int m = 3 + static_cast<int>(rng() % 9);
        const int n = 1 + static_cast<int>(rng() % 4);
        std::vector<Agent> agents;
        std::map<AgentId, Value> thresholds;
        std::vector<AgentId> pool;
        for (int i = 1; i <= n; ++i) {
            std::vector<Value> u;
            for (int v = 0; v < m; ++v) u.push_back(fx::random_rational(rng));
            agents.push_back(fx::agent(i, u));
            thresholds[i] = Value(1 + static_cast<int>(rng() % 8), 1 + static_cast<int>(rng() % 3));
            pool.push_back(i);
        }
        std::vector<VertexIndex> order(m);
        for (int v = 0; v < m; ++v) order[v] = v;
        std::shuffle(order.begin(), order.end(), rng);
        const bool reserve = rng() % 2;
        auto r = greedy_prefix_carve(order, pool, thresholds, agents, reserve);
        auto again = greedy_prefix_carve(order, pool, thresholds, agents, reserve);
        CHECK(r.served == again.served);
        CHECK(r.leftover == again.leftover);

        std::vector<AgentId> active = pool;
        std::size_t pos = 0;
        for (const auto& seg : r.assignments) {
            CHECK(std::equal(seg.vertices.begin(), seg.vertices.end(), order.begin() + pos));
            pos += seg.vertices.size();
            std::vector<VertexIndex> shorter(seg.vertices.begin(), seg.vertices.end() - 1);
            CHECK(utility_of_set(agents[seg.agent - 1], seg.vertices) >= thresholds[seg.agent]);
            for (AgentId j : active) {
                const Agent& a = agents[j - 1];
                CHECK(utility_of_set(a, shorter) < thresholds[j]);
                Value top = 0;
                for (VertexIndex v : seg.vertices) top = max(top, a(v));
                CHECK(utility_of_set(a, seg.vertices) < thresholds[j] + top);
                // the winner is the smallest qualifying id
                if (j < seg.agent) CHECK(utility_of_set(a, seg.vertices) < thresholds[j]);
            }
            active.erase(std::find(active.begin(), active.end(), seg.agent));
        }
        CHECK(std::equal(r.leftover.begin(), r.leftover.end(), order.begin() + pos));
        if (reserve) CHECK(!r.leftover.empty());
    }
}
