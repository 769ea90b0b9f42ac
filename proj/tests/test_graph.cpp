#include <doctest.h>

#include "prefatt/errors.hpp"
#include "prefatt/graph.hpp"
#include "support.hpp"

using namespace prefatt;

TEST_CASE("degree stats of tiny snapshots") {
    Snapshot s;
    s.node_count = 2;
    s.edges = {{1, 2}};
    DegreeStats ds = degree_stats_from_snapshot(s);
    CHECK(ds.in_tail == std::vector<std::uint64_t>{1, 0});
    CHECK(ds.out_tail == std::vector<std::uint64_t>{1, 0});
    CHECK(ds.in_zero == 1);
    CHECK(ds.out_zero == 1);

    s.edges = {{1, 2}, {1, 2}};
    ds = degree_stats_from_snapshot(s);
    CHECK(ds.in_tail == std::vector<std::uint64_t>{1, 1, 0});
    CHECK(ds.out_tail == std::vector<std::uint64_t>{1, 1, 0});
    CHECK(ds.n == 2);
}

TEST_CASE("degree stats reject out-of-range node ids") {
    Snapshot s;
    s.node_count = 2;
    s.edges = {{1, 3}};
    CHECK_THROWS_AS(degree_stats_from_snapshot(s), data_error);
    s.edges = {{0, 1}};
    CHECK_THROWS_AS(degree_stats_from_snapshot(s), data_error);
}

TEST_CASE("degree stats agree with the naive degree map on random snapshots") {
    RandomSource rng(11);
    for (int rep = 0; rep < 25; ++rep) {
        const std::uint64_t nodes = 2 + rng.bits() % 40;
        const std::uint64_t edges = 1 + rng.bits() % 1000;
        const Snapshot s = testsupport::random_snapshot(rng, nodes, edges);
        const DegreeStats ds = degree_stats_from_snapshot(s);
        const testsupport::NaiveDegrees naive(s);
        CHECK(ds.in_tail == naive.tail(naive.in));
        CHECK(ds.out_tail == naive.tail(naive.out));
        CHECK(ds.node_count == nodes);
        CHECK(ds.in_zero == ds.node_count - ds.in_tail[0]);
        // tails are non-increasing
        for (std::size_t i = 1; i < ds.in_tail.size(); ++i)
            CHECK(ds.in_tail[i] <= ds.in_tail[i - 1]);
    }
}

TEST_CASE("history node counting follows the scenario increments") {
    GrowthHistory h;
    h.seed = Snapshot{1, {}};
    h.edges = {{2, 1}, {1, 2}, {2, 3}, {4, 5}, {6, 6}};
    h.scenarios = {Scenario::alpha, Scenario::beta, Scenario::gamma, Scenario::both_new,
                   Scenario::self_loop};
    CHECK(h.node_count() == 1 + 1 + 0 + 1 + 2 + 1);
    CHECK(h.edge_count() == 5);
    const Snapshot s = h.to_snapshot();
    CHECK(s.node_count == 6);
    CHECK(s.edges.size() == 5);
}

TEST_CASE("replay rejects inconsistent scenario labels") {
    GrowthHistory h;
    h.seed = Snapshot{1, {}};
    h.edges = {{1, 1}};
    h.scenarios = {Scenario::alpha};  // alpha requires a fresh source id 2
    CHECK_THROWS_AS(replay_history(h, [](std::size_t, std::uint64_t, const Edge&, Scenario,
                                         const DegreeTracker&) {}),
                    data_error);
    h.scenarios.clear();
    CHECK_THROWS_AS(replay_history(h, [](std::size_t, std::uint64_t, const Edge&, Scenario,
                                         const DegreeTracker&) {}),
                    data_error);
}
