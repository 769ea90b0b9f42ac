#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "prefatt/fit.hpp"
#include "prefatt/graph.hpp"

namespace prefatt {

// (t-1, N(t-1)) over the steps of one scenario class, in step order.
struct StepSeries {
    std::vector<double> time;   // t - 1
    std::vector<double> nodes;  // N(t - 1)

    std::size_t size() const { return time.size(); }
};

/// Everything the likelihood factorizes through: scenario counts, degree-tail
/// differences between the end and the seed graph, and the (t-1, N(t-1))
/// pairs of the in-class (J in {1,2}) and out-class (J in {2,3}) steps.
struct SufficientStats {
    std::uint64_t n0 = 0;
    std::uint64_t n = 0;
    std::uint64_t seed_node_count = 0;
    std::array<std::uint64_t, 5> scenario_counts{};
    std::vector<std::uint64_t> in_tail_diff;   // N^in_{>i}(n) - N^in_{>i}(n0)
    std::vector<std::uint64_t> out_tail_diff;  // N^out_{>j}(n) - N^out_{>j}(n0)
    StepSeries in_steps;
    StepSeries out_steps;
    DegreeStats end_stats;  // tails at time n, for the Fisher plug-in
    bool extended = false;  // scenarios 4 or 5 present

    std::uint64_t steps() const { return n - n0; }
    std::uint64_t count(Scenario s) const { return scenario_counts[scenario_index(s)]; }

    // lambda-free score numerators: #J in {3,4,5} for delta_in, #J in
    // {1,4,5} for delta_out. With no extended scenarios these reduce to the
    // basic-model counts.
    std::uint64_t free_count(DeltaSide side) const;
};

/// Single replay pass over the history. Scenario labels are required; their
/// consistency with the edge endpoints is validated along the way. With
/// seed_correction = false the seed-graph tails are treated as zero (the
/// asymptotically equivalent uncorrected form).
SufficientStats sufficient_stats(const GrowthHistory& h, bool seed_correction = true);

// Scenario-probability MLEs (counts / (n - n0)); the dependent probability
// (gamma in the basic model, rho in the extended one) by complement so the
// five entries sum to one exactly.
std::array<double, 5> scenario_prob_mles(const SufficientStats& ss);
std::array<double, 5> scenario_prob_mles(const SufficientStats& ss, bool extended);

// Normalized profile-likelihood derivative for delta_in at lambda:
//   (1/(n-n0)) [ sum_i tail_diff_i/(i+lambda) - free_count/lambda
//                - sum_steps N(t-1)/(t-1+lambda N(t-1)) ].
double score_delta(const SufficientStats& ss, DeltaSide side, double lambda);

// The profile log-likelihood itself (normalized), maximized by the delta MLE.
double profile_loglik(const SufficientStats& ss, DeltaSide side, double lambda);

struct DeltaEstimate {
    double value = 0;
    SolverInfo info;
};

/// Bracketed root of the delta score on [bracket.lo, bracket.hi]. If the
/// score does not change sign there, returns the endpoint with the larger
/// profile log-likelihood, flagged as a boundary estimate (or throws when
/// allow_boundary is false).
DeltaEstimate mle_delta(const SufficientStats& ss, const DeltaBracket& bracket,
                        DeltaSide side, bool allow_boundary = true);

// Log-likelihood by direct replay of the history. Returns -infinity when a
// zero-probability scenario was observed.
double log_likelihood(const GrowthHistory& h, const Params& p);

// Same value through the sufficient-statistic factorization.
double log_likelihood(const SufficientStats& ss, const Params& p);

/// Asymptotic Fisher information I(theta) for the basic model, with the
/// degree sums evaluated on empirical tails (tail counts / n). Appends a
/// degeneracy warning when an information term is not positive.
CovMatrix fisher_information(const Params& p, const DegreeStats& stats,
                             std::vector<std::string>* warnings = nullptr);

/// Plug-in asymptotic covariance of sqrt(n)(theta_hat - theta): closed-form
/// inverse of the information matrix, with the multinomial block
/// [[a(1-a), -ab], [-ab, b(1-b)]].
CovMatrix mle_covariance(const Params& p, const DegreeStats& stats,
                         std::vector<std::string>* warnings = nullptr);

struct MleOptions {
    DeltaBracket bracket{};
    double conf_level = 0.95;
    bool seed_correction = true;
    // Fit the five-scenario model even when no scenario 4/5 step occurred
    // (extended bootstrap replicates may legitimately contain none).
    bool force_extended = false;
};

/// Full-history fit: closed-form scenario probabilities, root-solved deltas,
/// Fisher covariance and Wald intervals (basic model; extended fits carry no
/// covariance and use the bootstrap instead).
FitResult fit_mle(const GrowthHistory& h, const MleOptions& opt = {});
FitResult fit_mle(const SufficientStats& ss, const MleOptions& opt = {});

}  // namespace prefatt
