#pragma once

#include <cstdint>
#include <vector>

#include "prefatt/graph.hpp"
#include "prefatt/rng.hpp"

namespace prefatt {

struct SimConfig {
    Params params;
    std::uint64_t target_edges = 0;  // n, counting seed edges
    Snapshot seed_graph{1, {}};      // default: one node, no edges
    std::uint64_t rng_seed = 0;

    // target_edges must exceed the seed edge count; the seed graph needs at
    // least one node; scenario probabilities must be strictly interior.
    void validate() const;
};

/// One preferential draw in constant time. The endpoint list holds one side
/// (src or dst) of every existing edge, so a node appears as many times as
/// its degree on that side. Draw W ~ Uniform(0, t + N*delta]; W <= t picks
/// the endpoint of edge ceil(W), otherwise node ceil((W - t)/delta). The
/// resulting selection probability of node w is (D(w) + delta)/(t + N*delta).
/// t = 0 is allowed and samples uniformly over the N nodes.
NodeId node_sample(const std::vector<NodeId>& endpoints, std::uint64_t node_count,
                   double delta, RandomSource& rng);

/// Grows the network edge by edge to cfg.target_edges. One uniform selects
/// the scenario by cumulative thresholds; node choices are preferential
/// draws over flat append-only endpoint arrays, so the total cost is linear
/// in the number of edges. Deterministic given cfg.rng_seed.
GrowthHistory simulate(const SimConfig& cfg);

/// Independent replications; rep k runs on stream_seed(cfg.rng_seed, k).
/// Results are identical regardless of thread count or execution order.
std::vector<GrowthHistory> replicate(const SimConfig& cfg, std::uint64_t reps,
                                     unsigned threads = 0);

}  // namespace prefatt
