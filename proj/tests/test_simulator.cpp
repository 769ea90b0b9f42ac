#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "prefatt/limit_dist.hpp"
#include "prefatt/mathstats.hpp"
#include "prefatt/simulate.hpp"
#include "support.hpp"

using namespace prefatt;

namespace {

// Exact selection probabilities (D(w) + delta) / (t + N delta), the oracle
// for node_sample.
std::vector<double> exact_side_probs(const std::vector<NodeId>& endpoints,
                                     std::uint64_t node_count, double delta) {
    std::vector<double> probs(node_count, 0.0);
    for (NodeId v : endpoints) probs[v - 1] += 1.0;
    const double total = static_cast<double>(endpoints.size()) +
                         static_cast<double>(node_count) * delta;
    for (double& p : probs) p = (p + delta) / total;
    return probs;
}

}  // namespace

TEST_CASE("node_sample with no edges is uniform over nodes") {
    RandomSource rng(3);
    const std::vector<NodeId> empty;
    std::array<std::uint64_t, 3> counts{};
    const int draws = 60000;
    for (int k = 0; k < draws; ++k) ++counts[node_sample(empty, 3, 0.7, rng) - 1];
    const double se = std::sqrt((1.0 / 3) * (2.0 / 3) / draws);
    for (auto c : counts)
        CHECK(std::abs(static_cast<double>(c) / draws - 1.0 / 3) < 4 * se);
}

TEST_CASE("node_sample on two parallel edges: P(dst = 2) = 3/4") {
    RandomSource rng(5);
    const std::vector<NodeId> dsts{2, 2};
    const int draws = 100000;
    std::uint64_t hit = 0;
    for (int k = 0; k < draws; ++k)
        if (node_sample(dsts, 2, 1.0, rng) == 2) ++hit;
    const double se = std::sqrt(0.75 * 0.25 / draws);
    CHECK(std::abs(static_cast<double>(hit) / draws - 0.75) < 4 * se);
}

TEST_CASE("single-step frequencies match the selection law on a fixed graph") {
    // fixed 5-node graph with a spread of in-degrees
    Snapshot s;
    s.node_count = 5;
    s.edges = {{1, 2}, {1, 2}, {3, 2}, {4, 5}, {2, 1}, {5, 1}, {4, 3}};
    std::vector<NodeId> dsts;
    for (const Edge& e : s.edges) dsts.push_back(e.dst);
    const double delta = 2.0;
    const auto probs = exact_side_probs(dsts, s.node_count, delta);

    RandomSource rng(17);
    const int draws = 100000;
    std::vector<std::uint64_t> counts(s.node_count, 0);
    for (int k = 0; k < draws; ++k) ++counts[node_sample(dsts, s.node_count, delta, rng) - 1];
    for (std::size_t v = 0; v < s.node_count; ++v) {
        const double se = std::sqrt(probs[v] * (1 - probs[v]) / draws);
        CHECK(std::abs(static_cast<double>(counts[v]) / draws - probs[v]) < 3.5 * se);
    }
}

TEST_CASE("chi-square GOF of node_sample on a random 20-edge graph") {
    RandomSource graph_rng(23);
    const Snapshot s = testsupport::random_snapshot(graph_rng, 8, 20);
    std::vector<NodeId> dsts;
    for (const Edge& e : s.edges) dsts.push_back(e.dst);
    const double delta = 1.3;
    const auto probs = exact_side_probs(dsts, s.node_count, delta);

    RandomSource rng(29);
    const int draws = 100000;
    std::vector<std::uint64_t> counts(s.node_count, 0);
    for (int k = 0; k < draws; ++k) ++counts[node_sample(dsts, s.node_count, delta, rng) - 1];
    double stat = 0;
    for (std::size_t v = 0; v < s.node_count; ++v) {
        const double expect = probs[v] * draws;
        stat += (counts[v] - expect) * (counts[v] - expect) / expect;
    }
    CHECK(chi2_sf(stat, static_cast<double>(s.node_count - 1)) > 0.001);
}

TEST_CASE("alpha-scheme only: every source is fresh") {
    const double eps = 1e-9;
    SimConfig cfg;
    cfg.params = Params(1.0 - 2 * eps, eps, eps, 2.0, 1.0);
    cfg.target_edges = 300;
    cfg.rng_seed = 123;
    const GrowthHistory h = simulate(cfg);
    CHECK(h.node_count() == 1 + 300);
    std::uint64_t nodes = 1;
    for (std::size_t k = 0; k < h.edges.size(); ++k) {
        CHECK(h.scenarios[k] == Scenario::alpha);
        CHECK(h.edges[k].src == nodes + 1);
        CHECK(h.edges[k].dst <= nodes);
        ++nodes;
    }
}

TEST_CASE("beta-scheme only: node count stays at the seed") {
    const double eps = 1e-9;
    SimConfig cfg;
    cfg.params = Params(eps, 1.0 - 2 * eps, eps, 2.0, 1.0);
    cfg.target_edges = 300;
    cfg.seed_graph = Snapshot{3, {}};
    cfg.rng_seed = 42;
    const GrowthHistory h = simulate(cfg);
    CHECK(h.node_count() == 3);
    for (const Edge& e : h.edges) {
        CHECK(e.src <= 3);
        CHECK(e.dst <= 3);
    }
}

TEST_CASE("growth bookkeeping: node and degree sums") {
    SimConfig cfg;
    cfg.params = Params(0.25, 0.45, 0.2, 0.06, 0.04, 2.0, 1.0);
    cfg.target_edges = 5000;
    cfg.seed_graph = Snapshot{4, {{1, 2}, {3, 4}, {2, 3}}};
    cfg.rng_seed = 99;
    const GrowthHistory h = simulate(cfg);

    std::array<std::uint64_t, 5> counts{};
    for (Scenario s : h.scenarios) ++counts[scenario_index(s)];
    CHECK(h.node_count() - h.seed_node_count() ==
          counts[0] + counts[2] + counts[4] + 2 * counts[3]);

    const DegreeStats ds = degree_stats_from_snapshot(h.to_snapshot());
    std::uint64_t in_sum = 0, out_sum = 0;
    for (auto c : ds.in_tail) in_sum += c;
    for (auto c : ds.out_tail) out_sum += c;
    CHECK(in_sum == h.edge_count());
    CHECK(out_sum == h.edge_count());
}

TEST_CASE("basic model: self loops only arise from the beta scheme") {
    SimConfig cfg;
    cfg.params = Params(0.3, 0.5, 0.2, 2.0, 1.0);
    cfg.target_edges = 20000;
    cfg.rng_seed = 321;
    const GrowthHistory h = simulate(cfg);
    for (std::size_t k = 0; k < h.edges.size(); ++k)
        if (h.edges[k].src == h.edges[k].dst) CHECK(h.scenarios[k] == Scenario::beta);
}

TEST_CASE("replicate is deterministic and stream-split") {
    SimConfig cfg;
    cfg.params = Params(0.3, 0.5, 0.2, 2.0, 1.0);
    cfg.target_edges = 500;
    cfg.rng_seed = 7;
    const auto a = replicate(cfg, 2, 1);
    const auto b = replicate(cfg, 2, 2);
    CHECK(a[0].edges != a[1].edges);  // distinct streams
    CHECK(a[0].edges == b[0].edges);  // identical under any thread count
    CHECK(a[1].edges == b[1].edges);
    CHECK(a[0].scenarios == b[0].scenarios);
}

TEST_CASE("node share N(n)/n concentrates at 1 - beta") {
    SimConfig cfg;
    cfg.params = Params(0.3, 0.5, 0.2, 2.0, 1.0);
    cfg.target_edges = 5000;
    cfg.rng_seed = 70;
    const std::uint64_t reps = 200;
    std::vector<double> shares;
    for (const auto& h : replicate(cfg, reps))
        shares.push_back(static_cast<double>(h.node_count()) /
                         static_cast<double>(h.edge_count()));
    const double m = mean(shares);
    const double se = std::sqrt(sample_variance(shares) / static_cast<double>(reps));
    CHECK(std::abs(m - 0.5) < 3 * se + 1.0 / 5000.0);
}

TEST_CASE("in-degree tail slope matches the power-law index at n = 1e6") {
    SimConfig cfg;
    cfg.params = Params(0.3, 0.5, 0.2, 2.0, 1.0);
    cfg.target_edges = 1000000;
    cfg.rng_seed = 2024;
    const GrowthHistory h = simulate(cfg);
    const DegreeStats ds = degree_stats_from_snapshot(h.to_snapshot());

    std::vector<double> lx, ly;
    for (std::size_t i = 10; i <= 1000 && i < ds.in_tail.size(); ++i) {
        if (ds.in_tail[i] == 0) break;
        lx.push_back(std::log(static_cast<double>(i)));
        ly.push_back(std::log(static_cast<double>(ds.in_tail[i])));
    }
    REQUIRE(lx.size() > 20);
    const double slope = testsupport::ls_slope(lx, ly);
    CHECK(std::abs(slope - (-2.5)) < 0.3);

    // empirical tails meet the limit distribution: N_{>i}(n)/n vs p_{>i}
    const LimitInDist lim = limit_in_dist(cfg.params, cfg.params.delta_in);
    for (std::size_t i = 0; i <= 20; ++i) {
        const double emp = static_cast<double>(ds.in_tail[i]) / 1e6;
        CHECK(std::abs(emp - lim.tails[i]) < 0.01);
    }
}
