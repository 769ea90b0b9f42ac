#include "prefatt/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "prefatt/errors.hpp"
#include "prefatt/parallel.hpp"

namespace prefatt {

void SimConfig::validate() const {
    params.require_interior();
    if (seed_graph.node_count < 1)
        throw std::invalid_argument("seed graph needs at least one node");
    if (target_edges <= seed_graph.edges.size())
        throw std::invalid_argument("target_edges must exceed the seed edge count");
    for (const Edge& e : seed_graph.edges)
        if (e.src == 0 || e.dst == 0 || e.src > seed_graph.node_count ||
            e.dst > seed_graph.node_count)
            throw std::invalid_argument("seed edge references a node outside the seed graph");
}

NodeId node_sample(const std::vector<NodeId>& endpoints, std::uint64_t node_count,
                   double delta, RandomSource& rng) {
    const double t = static_cast<double>(endpoints.size());
    const double total = t + static_cast<double>(node_count) * delta;
    const double w = rng.uniform_pos() * total;  // (0, total], never exactly 0
    if (w <= t) {
        auto idx = static_cast<std::uint64_t>(std::ceil(w));
        idx = std::clamp<std::uint64_t>(idx, 1, endpoints.size());
        return endpoints[idx - 1];
    }
    auto id = static_cast<std::uint64_t>(std::ceil((w - t) / delta));
    return static_cast<NodeId>(std::clamp<std::uint64_t>(id, 1, node_count));
}

GrowthHistory simulate(const SimConfig& cfg) {
    cfg.validate();
    const Params& p = cfg.params;
    const std::uint64_t n0 = cfg.seed_graph.edges.size();
    const std::uint64_t steps = cfg.target_edges - n0;

    std::vector<NodeId> srcs, dsts;
    srcs.reserve(cfg.target_edges);
    dsts.reserve(cfg.target_edges);
    for (const Edge& e : cfg.seed_graph.edges) {
        srcs.push_back(e.src);
        dsts.push_back(e.dst);
    }

    GrowthHistory h;
    h.seed = cfg.seed_graph;
    h.edges.reserve(steps);
    h.scenarios.reserve(steps);

    RandomSource rng(cfg.rng_seed);
    const double c1 = p.alpha;
    const double c2 = p.alpha + p.beta;
    const double c3 = p.alpha + p.beta + p.gamma;
    const double c4 = p.alpha + p.beta + p.gamma + p.xi;
    std::uint64_t nodes = cfg.seed_graph.node_count;

    for (std::uint64_t step = 0; step < steps; ++step) {
        const double u = rng.uniform();
        NodeId v1, v2;
        Scenario j;
        if (u < c1) {
            j = Scenario::alpha;
            v2 = node_sample(dsts, nodes, p.delta_in, rng);
            v1 = static_cast<NodeId>(++nodes);
        } else if (u < c2) {
            j = Scenario::beta;
            v1 = node_sample(srcs, nodes, p.delta_out, rng);
            v2 = node_sample(dsts, nodes, p.delta_in, rng);
        } else if (u < c3) {
            j = Scenario::gamma;
            v1 = node_sample(srcs, nodes, p.delta_out, rng);
            v2 = static_cast<NodeId>(++nodes);
        } else if (u < c4) {
            j = Scenario::both_new;
            v1 = static_cast<NodeId>(nodes + 1);
            v2 = static_cast<NodeId>(nodes + 2);
            nodes += 2;
        } else {
            j = Scenario::self_loop;
            v1 = v2 = static_cast<NodeId>(++nodes);
        }
        srcs.push_back(v1);
        dsts.push_back(v2);
        h.edges.push_back({v1, v2});
        h.scenarios.push_back(j);
    }
    return h;
}

std::vector<GrowthHistory> replicate(const SimConfig& cfg, std::uint64_t reps,
                                     unsigned threads) {
    if (reps < 1) throw std::invalid_argument("reps must be at least 1");
    cfg.validate();
    std::vector<GrowthHistory> out(reps);
    parallel_for(reps, [&](std::uint64_t k) {
        SimConfig rep_cfg = cfg;
        rep_cfg.rng_seed = stream_seed(cfg.rng_seed, k);
        out[k] = simulate(rep_cfg);
    }, threads);
    return out;
}

}  // namespace prefatt
