#include "prefatt/limit_dist.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "prefatt/errors.hpp"

namespace prefatt {

double a1(double lambda, const Params& p) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    return (p.alpha + p.beta) / (1.0 + lambda * (1.0 - p.beta));
}

namespace {

// sum_{j >= I} p_{>j} for I >= 1, from the recursion identity
// p_{>j} = a1 (j + lambda) p_j.
double tail_remainder(const LimitInDist& d, std::size_t index) {
    const double a = a1(d.lambda, d.params);
    const double p_i = d.probs[index];
    const double p_gt = d.tails[index];
    return a * (static_cast<double>(index) + d.lambda) * (p_i + p_gt) / (1.0 - a);
}

}  // namespace

double LimitInDist::mass() const {
    double s = 0;
    for (double p : probs) s += p;
    return s + truncation_mass;
}

double LimitInDist::first_moment() const {
    double s = 0;
    for (std::size_t i = 1; i < probs.size(); ++i) s += static_cast<double>(i) * probs[i];
    const std::size_t last = max_index();
    // sum_{i>I} i p_i = I p_{>I} + sum_{j>=I} p_{>j}
    return s + static_cast<double>(last) * tails[last] + tail_remainder(*this, last);
}

double LimitInDist::tail_sum_from(std::size_t start) const {
    const std::size_t last = max_index();
    if (start > last) throw std::invalid_argument("tail sum beyond computed range");
    double s = 0;
    for (std::size_t i = start; i < last; ++i) s += tails[i];
    return s + tail_remainder(*this, last);
}

double LimitInDist::tail_total() const { return tail_sum_from(0); }

LimitInDist limit_in_dist(const Params& p, double lambda, const LimitOptions& opt) {
    p.require_interior();
    if (!p.basic())
        throw std::domain_error("limit distribution is defined for the basic model only");
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");

    LimitInDist d;
    d.params = p;
    d.lambda = lambda;
    const double a = a1(lambda, p);
    const double inv_a = 1.0 / a;

    // p_0 (lambda + 1/a1) = alpha / a1; tails via p_{>i} = a1 (i+lambda) p_i
    // with the extra gamma at i = 0.
    double prob = (p.alpha * inv_a) / (lambda + inv_a);
    double tail = a * lambda * prob + p.gamma;
    d.probs.push_back(prob);
    d.tails.push_back(tail);

    for (std::size_t i = 1; i < opt.max_terms; ++i) {
        if (i == 1) {
            prob = (lambda * prob + p.gamma * inv_a) / (1.0 + lambda + inv_a);
        } else {
            const double di = static_cast<double>(i);
            prob = (di - 1.0 + lambda) * prob / (di + lambda + inv_a);
        }
        tail = a * (static_cast<double>(i) + lambda) * prob;
        d.probs.push_back(prob);
        d.tails.push_back(tail);
        if (tail < opt.tail_tol && i >= opt.min_terms) break;
    }
    d.truncation_mass = d.tails.back();
    if (d.truncation_mass >= opt.tail_tol && d.probs.size() >= opt.max_terms)
        throw numeric_error("limit distribution truncated at " +
                            std::to_string(d.probs.size()) + " terms with tail mass " +
                            std::to_string(d.truncation_mass));
    return d;
}

LimitInDist limit_out_dist(const Params& p, double lambda, const LimitOptions& opt) {
    return limit_in_dist(p.mirrored(), lambda, opt);
}

double limit_in_prob_closed_form(const Params& p, double lambda, std::uint64_t i) {
    p.require_interior();
    const double a = a1(lambda, p);
    if (i == 0) return p.alpha / (1.0 + a * lambda);
    const double inv_a = 1.0 / a;
    const double c = p.alpha * lambda / (1.0 + a * lambda) + p.gamma * inv_a;
    const double di = static_cast<double>(i);
    const double log_ratio = std::lgamma(di + lambda) + std::lgamma(1.0 + lambda + inv_a) -
                             std::lgamma(di + 1.0 + lambda + inv_a) -
                             std::lgamma(1.0 + lambda);
    return std::exp(log_ratio) * c;
}

double psi_limit(double lambda, const Params& p, const LimitOptions& opt) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const LimitInDist d = limit_in_dist(p, p.delta_in, opt);
    double s = 0;
    const std::size_t last = d.max_index();
    for (std::size_t i = 0; i <= last; ++i)
        s += d.tails[i] / (static_cast<double>(i) + lambda);
    // remainder: terms beyond the recursion, bounded by their leading index
    const double beyond = d.tail_sum_from(last) - d.tails[last];
    s += beyond / (static_cast<double>(last) + 1.0 + lambda);
    return s - p.gamma / lambda - (1.0 - p.beta) * a1(lambda, p);
}

LimitFG limit_fg(const Params& p, double delta, const LimitOptions& opt) {
    if (!(delta > 0.0)) throw std::invalid_argument("delta must be positive");
    const LimitInDist d = limit_in_dist(p, p.delta_in, opt);
    const double scale = 1.0 + delta * (1.0 - p.beta);
    double f = 0;
    const std::size_t last = d.max_index();
    for (std::size_t i = 1; i <= last; ++i) {
        const double di = static_cast<double>(i);
        f += d.tails[i] * di / (di + delta);
    }
    // beyond the recursion the factor i/(i+delta) is essentially 1
    f += d.tail_sum_from(last) - d.tails[last];
    f *= scale;
    const double p0 = d.probs[0];
    const double g = (p0 + p.beta) / (1.0 - p0 * delta / scale);
    return {f, g};
}

}  // namespace prefatt
