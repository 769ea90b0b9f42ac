#pragma once

#include <cstdint>
#include <vector>

#include "prefatt/fit.hpp"
#include "prefatt/graph.hpp"

namespace prefatt {

/// Moment inputs of the single-snapshot estimator: normalized degree tails
/// and the node-count statistic beta_tilde = 1 - N(n)/n.
struct SnapshotMoments {
    std::uint64_t n = 0;
    double beta_tilde = 0;
    std::vector<double> in_tail_frac;   // N^in_{>i}(n) / n
    std::vector<double> out_tail_frac;  // N^out_{>j}(n) / n
    double in_zero_frac = 0;            // N^in_0(n) / n
    double out_zero_frac = 0;
    bool beta_in_range = true;          // beta_tilde inside [0, 1)
};

SnapshotMoments snapshot_moments(const DegreeStats& ds);

// The reparametrization eta = delta / (1 + delta (1 - beta)): strictly
// increasing from (0, inf) onto (0, 1/(1-beta)); the moment-gap function is
// concave in eta, which makes its root unique.
double eta_from_delta(double delta, double beta);
double delta_from_eta(double eta, double beta);

struct Step2Result {
    double delta0 = 0;
    SolverInfo info;
};

/// Solves the tail-moment matching equation f_n(delta) = g_n(delta) for the
/// pilot offset estimate, in eta-space. A grid scan locates sign changes; if
/// several appear (possible in noisy samples), the one closest to a pilot
/// bisection from the interval midpoint is used and the result is flagged.
Step2Result solve_step2(const SnapshotMoments& m, DeltaSide side, const DeltaBracket& bracket);

struct SnapshotOptions {
    DeltaBracket bracket{};
};

/// Single-snapshot fit of the basic model:
///   1. beta from the node count, 2-3. in-side moment solve for the pilot
///   (delta_in, alpha), 4-5. the out-side mirror for (delta_out, gamma),
///   6. renormalization so alpha + beta + gamma = 1 exactly,
///   7. re-solve of both approximate score equations at the renormalized
///      probabilities.
/// Depends on the snapshot only through its degree statistics, so the edge
/// order cannot matter. No covariance is attached; see bootstrap_ci.
FitResult snapshot_fit(const DegreeStats& ds, const SnapshotOptions& opt = {});
FitResult snapshot_fit(const Snapshot& s, const SnapshotOptions& opt = {});

struct BootstrapOptions {
    std::uint64_t reps = 200;
    double level = 0.95;
    std::uint64_t rng_seed = 1;
    unsigned threads = 0;
    double max_failure_rate = 0.05;
    DeltaBracket bracket{};
};

/// Parametric bootstrap: simulates reps networks with n_edges edges at the
/// fitted parameters, refits each one by the same method as fr, and attaches
/// the bootstrap covariance and Wald intervals to fr. Replicate failures are
/// tolerated up to max_failure_rate and reported in fr.warnings.
void bootstrap_ci(FitResult& fr, std::uint64_t n_edges, const BootstrapOptions& opt = {});

}  // namespace prefatt
