#include "prefatt/graph.hpp"

#include <string>

#include "prefatt/errors.hpp"

namespace prefatt {

std::uint64_t GrowthHistory::node_count() const {
    std::uint64_t n = seed.node_count;
    for (Scenario s : scenarios) {
        switch (s) {
            case Scenario::alpha:
            case Scenario::gamma:
            case Scenario::self_loop: n += 1; break;
            case Scenario::both_new: n += 2; break;
            case Scenario::beta: break;
        }
    }
    return n;
}

Snapshot GrowthHistory::to_snapshot() const {
    Snapshot s;
    s.node_count = node_count();
    s.edges.reserve(edge_count());
    s.edges.insert(s.edges.end(), seed.edges.begin(), seed.edges.end());
    s.edges.insert(s.edges.end(), edges.begin(), edges.end());
    return s;
}

DegreeTracker::DegreeTracker(std::uint64_t initial_nodes) {
    add_nodes(initial_nodes);
}

DegreeTracker::DegreeTracker(const Snapshot& seed) {
    add_nodes(seed.node_count);
    for (const Edge& e : seed.edges) add_edge(e.src, e.dst);
}

void DegreeTracker::add_nodes(std::uint64_t k) {
    in_deg_.resize(in_deg_.size() + k, 0);
    out_deg_.resize(out_deg_.size() + k, 0);
}

void DegreeTracker::bump(std::vector<std::uint64_t>& tail, std::uint32_t old_degree) {
    // Degree old -> old+1 changes N_{>i} only at i = old.
    if (tail.size() <= old_degree) tail.resize(old_degree + 1, 0);
    ++tail[old_degree];
}

void DegreeTracker::add_edge(NodeId src, NodeId dst) {
    const std::uint64_t n = node_count();
    if (src == 0 || dst == 0 || src > n || dst > n)
        throw data_error("edge (" + std::to_string(src) + ", " + std::to_string(dst) +
                         ") references a node outside 1.." + std::to_string(n));
    bump(out_tail_, out_deg_[src - 1]);
    ++out_deg_[src - 1];
    bump(in_tail_, in_deg_[dst - 1]);
    ++in_deg_[dst - 1];
    ++edges_;
}

DegreeStats DegreeTracker::stats() const {
    DegreeStats ds;
    ds.n = edges_;
    ds.node_count = node_count();
    ds.in_tail = in_tail_;
    ds.in_tail.push_back(0);  // entry at i = max degree
    ds.out_tail = out_tail_;
    ds.out_tail.push_back(0);
    ds.in_zero = ds.node_count - (in_tail_.empty() ? 0 : in_tail_[0]);
    ds.out_zero = ds.node_count - (out_tail_.empty() ? 0 : out_tail_[0]);
    return ds;
}

DegreeStats degree_stats_from_snapshot(const Snapshot& s) {
    DegreeTracker tracker(s.node_count);
    for (const Edge& e : s.edges) tracker.add_edge(e.src, e.dst);
    return tracker.stats();
}

namespace detail {

bool apply_scenario(DegreeTracker& tracker, Scenario s, const Edge& e) {
    const std::uint64_t n = tracker.node_count();
    switch (s) {
        case Scenario::alpha:
            if (e.src != n + 1 || e.dst == 0 || e.dst > n) return false;
            tracker.add_nodes(1);
            return true;
        case Scenario::beta:
            return e.src >= 1 && e.src <= n && e.dst >= 1 && e.dst <= n;
        case Scenario::gamma:
            if (e.dst != n + 1 || e.src == 0 || e.src > n) return false;
            tracker.add_nodes(1);
            return true;
        case Scenario::both_new:
            if (e.src != n + 1 || e.dst != n + 2) return false;
            tracker.add_nodes(2);
            return true;
        case Scenario::self_loop:
            if (e.src != n + 1 || e.dst != n + 1) return false;
            tracker.add_nodes(1);
            return true;
    }
    return false;
}

}  // namespace detail

}  // namespace prefatt
