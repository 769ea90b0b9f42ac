#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "prefatt/params.hpp"

namespace prefatt {

// a1(lambda) = (alpha + beta) / (1 + lambda (1 - beta)).
double a1(double lambda, const Params& p);

struct LimitOptions {
    double tail_tol = 1e-12;            // stop once P(degree > i) < tail_tol
    std::size_t max_terms = 10'000'000;
    std::size_t min_terms = 0;          // force the recursion at least this far
};

/// Limiting in-degree distribution p_i(lambda), computed by the degree
/// recursion. probs[i] = p_i and tails[i] = p_{>i} over the same index
/// range; the recursion stops once the tail mass drops below tail_tol.
///
/// The distribution only sums to 1 - beta, and the moment series converge
/// slowly when the power-law index is near 2, so the moment accessors add
/// the analytic remainder sum_{j>=I} p_{>j} = a1 (I+lambda)(p_I + p_{>I})
/// / (1 - a1) instead of truncating.
struct LimitInDist {
    Params params;
    double lambda = 0;
    std::vector<double> probs;
    std::vector<double> tails;
    double truncation_mass = 0;  // p_{>I} beyond the last computed index

    std::size_t max_index() const { return probs.size() - 1; }

    double mass() const;          // sum_i p_i               -> 1 - beta
    double first_moment() const;  // sum_i i p_i             -> 1
    double tail_total() const;    // sum_i p_{>i}            -> 1
    double tail_sum_from(std::size_t start) const;  // sum_{i>=start} p_{>i}
};

LimitInDist limit_in_dist(const Params& p, double lambda, const LimitOptions& opt = {});

// Out-degree marginal: the in-degree recursion on mirrored parameters.
LimitInDist limit_out_dist(const Params& p, double lambda, const LimitOptions& opt = {});

// Closed-form p_i(lambda) through log-gamma; cross-check for the recursion.
double limit_in_prob_closed_form(const Params& p, double lambda, std::uint64_t i);

/// Limit of the normalized delta_in score,
///   psi(lambda) = sum_i p_{>i}(delta_in)/(i+lambda) - gamma/lambda
///                 - (1-beta) a1(lambda),
/// with tails taken at the true delta_in from p. Positive below delta_in,
/// zero at delta_in, negative above.
double psi_limit(double lambda, const Params& p, const LimitOptions& opt = {});

struct LimitFG {
    double f;
    double g;
};

/// Theoretical moment-matching pair of the snapshot estimator:
///   f(delta) = sum_{i>=1} p_{>i} i/(i+delta) (1 + delta (1-beta)),
///   g(delta) = (p_0 + beta) / (1 - p_0 delta/(1 + (1-beta) delta)),
/// both evaluated with tails at the true delta_in. f(delta_in) = g(delta_in)
/// = alpha + beta.
LimitFG limit_fg(const Params& p, double delta, const LimitOptions& opt = {});

}  // namespace prefatt
