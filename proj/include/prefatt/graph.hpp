#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prefatt/errors.hpp"
#include "prefatt/params.hpp"

namespace prefatt {

// 1-based node id, assigned in creation order.
using NodeId = std::uint32_t;

struct Edge {
    NodeId src = 0;
    NodeId dst = 0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Static directed multigraph: an unordered edge list plus the node count.
/// Node ids run 1..node_count; ids not referenced by any edge are isolated.
struct Snapshot {
    std::uint64_t node_count = 0;
    std::vector<Edge> edges;
};

/// Edge-by-edge evolution on top of a seed graph G(n0). edges[k] was created
/// at time t = n0 + k + 1 and scenarios[k] is the scheme that created it.
/// Timestamps are optional, carried for data round-trips only.
struct GrowthHistory {
    Snapshot seed{1, {}};  // default seed: one node, no edges
    std::vector<Edge> edges;
    std::vector<Scenario> scenarios;
    std::vector<std::int64_t> timestamps;  // empty, or aligned with edges

    std::uint64_t seed_edge_count() const { return seed.edges.size(); }
    std::uint64_t seed_node_count() const { return seed.node_count; }
    std::uint64_t edge_count() const { return seed.edges.size() + edges.size(); }
    bool has_scenarios() const { return scenarios.size() == edges.size(); }

    // N(n), reconstructed from the scenario-driven node increments.
    std::uint64_t node_count() const;

    // Forgets order, scenarios and timestamps.
    Snapshot to_snapshot() const;
};

/// Empirical degree-tail counts. in_tail[i] = N^in_{>i}(n), the number of
/// nodes with in-degree strictly greater than i, for i = 0..max in-degree
/// (so the last entry is zero). Estimator equations consume tails; point
/// counts follow by differencing.
struct DegreeStats {
    std::uint64_t n = 0;  // edge count
    std::uint64_t node_count = 0;
    std::vector<std::uint64_t> in_tail;
    std::vector<std::uint64_t> out_tail;
    std::uint64_t in_zero = 0;   // nodes with in-degree 0
    std::uint64_t out_zero = 0;  // nodes with out-degree 0
};

DegreeStats degree_stats_from_snapshot(const Snapshot& s);

/// Degree state maintained one edge at a time, with running tail counts.
/// Shared by the estimators' replay passes, windowed refits and the
/// goodness-of-fit frequency computation.
class DegreeTracker {
  public:
    DegreeTracker() = default;
    explicit DegreeTracker(std::uint64_t initial_nodes);
    explicit DegreeTracker(const Snapshot& seed);  // nodes plus seed edges

    void add_nodes(std::uint64_t k);
    // Endpoints must already exist; throws data_error otherwise.
    void add_edge(NodeId src, NodeId dst);

    std::uint64_t node_count() const { return in_deg_.size(); }
    std::uint64_t edge_count() const { return edges_; }
    std::uint32_t in_degree(NodeId v) const { return in_deg_[v - 1]; }
    std::uint32_t out_degree(NodeId v) const { return out_deg_[v - 1]; }

    // N_{>i} vectors without the trailing zero entry.
    const std::vector<std::uint64_t>& in_tails() const { return in_tail_; }
    const std::vector<std::uint64_t>& out_tails() const { return out_tail_; }

    DegreeStats stats() const;

  private:
    static void bump(std::vector<std::uint64_t>& tail, std::uint32_t old_degree);

    std::vector<std::uint32_t> in_deg_;
    std::vector<std::uint32_t> out_deg_;
    std::vector<std::uint64_t> in_tail_;
    std::vector<std::uint64_t> out_tail_;
    std::uint64_t edges_ = 0;
};

namespace detail {
// Node additions implied by a scenario, validated against the edge ids.
// Returns false on any mismatch.
bool apply_scenario(DegreeTracker& tracker, Scenario s, const Edge& e);
}  // namespace detail

/// Replays a history step by step, validating each scenario label against
/// its edge's endpoints. fn(step, t_minus_1, edge, scenario, tracker) runs
/// before the step is applied, so the tracker still holds the time-(t-1)
/// state; t_minus_1 counts all edges before the step, seed included.
/// Returns the final degree state.
template <typename F>
DegreeTracker replay_history(const GrowthHistory& h, F&& fn) {
    if (!h.has_scenarios())
        throw data_error("history is missing scenario labels");
    DegreeTracker tracker(h.seed);
    std::uint64_t t_minus_1 = h.seed_edge_count();
    for (std::size_t k = 0; k < h.edges.size(); ++k) {
        fn(k, t_minus_1, h.edges[k], h.scenarios[k], tracker);
        if (!detail::apply_scenario(tracker, h.scenarios[k], h.edges[k]))
            throw data_error("scenario label inconsistent with edge ids at step " +
                             std::to_string(t_minus_1 + 1));
        tracker.add_edge(h.edges[k].src, h.edges[k].dst);
        ++t_minus_1;
    }
    return tracker;
}

}  // namespace prefatt
