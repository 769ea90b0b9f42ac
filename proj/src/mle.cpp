#include "prefatt/mle.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "prefatt/errors.hpp"
#include "prefatt/root.hpp"

namespace prefatt {

namespace {

bool in_class(Scenario s) { return s == Scenario::alpha || s == Scenario::beta; }
bool out_class(Scenario s) { return s == Scenario::beta || s == Scenario::gamma; }

std::vector<std::uint64_t> tail_difference(const std::vector<std::uint64_t>& end,
                                           const std::vector<std::uint64_t>& seed) {
    std::vector<std::uint64_t> out(end.size());
    for (std::size_t i = 0; i < end.size(); ++i)
        out[i] = end[i] - (i < seed.size() ? seed[i] : 0);
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
}

}  // namespace

std::uint64_t SufficientStats::free_count(DeltaSide side) const {
    const auto& c = scenario_counts;
    return side == DeltaSide::in ? c[2] + c[3] + c[4] : c[0] + c[3] + c[4];
}

SufficientStats sufficient_stats(const GrowthHistory& h, bool seed_correction) {
    SufficientStats ss;
    ss.n0 = h.seed_edge_count();
    ss.n = h.edge_count();
    ss.seed_node_count = h.seed_node_count();

    DegreeTracker seed_state(h.seed);
    const std::vector<std::uint64_t> seed_in = seed_state.in_tails();
    const std::vector<std::uint64_t> seed_out = seed_state.out_tails();

    const std::size_t m = h.edges.size();
    ss.in_steps.time.reserve(m);
    ss.in_steps.nodes.reserve(m);
    ss.out_steps.time.reserve(m);
    ss.out_steps.nodes.reserve(m);

    const DegreeTracker final_state =
        replay_history(h, [&](std::size_t, std::uint64_t t_minus_1, const Edge&, Scenario s,
                              const DegreeTracker& tracker) {
            ++ss.scenario_counts[scenario_index(s)];
            const double time = static_cast<double>(t_minus_1);
            const double nodes = static_cast<double>(tracker.node_count());
            if (in_class(s)) {
                ss.in_steps.time.push_back(time);
                ss.in_steps.nodes.push_back(nodes);
            }
            if (out_class(s)) {
                ss.out_steps.time.push_back(time);
                ss.out_steps.nodes.push_back(nodes);
            }
        });
    ss.end_stats = final_state.stats();
    if (seed_correction) {
        ss.in_tail_diff = tail_difference(final_state.in_tails(), seed_in);
        ss.out_tail_diff = tail_difference(final_state.out_tails(), seed_out);
    } else {
        ss.in_tail_diff = final_state.in_tails();
        ss.out_tail_diff = final_state.out_tails();
    }
    ss.extended = ss.scenario_counts[3] + ss.scenario_counts[4] > 0;
    return ss;
}

std::array<double, 5> scenario_prob_mles(const SufficientStats& ss) {
    return scenario_prob_mles(ss, ss.extended);
}

std::array<double, 5> scenario_prob_mles(const SufficientStats& ss, bool extended) {
    const double m = static_cast<double>(ss.steps());
    if (m <= 0) throw std::invalid_argument("history has no observed steps");
    const auto& c = ss.scenario_counts;
    std::array<double, 5> probs{};
    if (extended) {
        for (int j = 0; j < 4; ++j) probs[j] = static_cast<double>(c[j]) / m;
        probs[4] = 1.0 - probs[0] - probs[1] - probs[2] - probs[3];
    } else {
        probs[0] = static_cast<double>(c[0]) / m;
        probs[1] = static_cast<double>(c[1]) / m;
        probs[2] = 1.0 - probs[0] - probs[1];
        probs[3] = probs[4] = 0.0;
    }
    return probs;
}

double score_delta(const SufficientStats& ss, DeltaSide side, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const auto& tail = side == DeltaSide::in ? ss.in_tail_diff : ss.out_tail_diff;
    const auto& steps = side == DeltaSide::in ? ss.in_steps : ss.out_steps;
    double s = 0;
    for (std::size_t i = 0; i < tail.size(); ++i)
        s += static_cast<double>(tail[i]) / (static_cast<double>(i) + lambda);
    s -= static_cast<double>(ss.free_count(side)) / lambda;
    for (std::size_t k = 0; k < steps.size(); ++k)
        s -= steps.nodes[k] / (steps.time[k] + lambda * steps.nodes[k]);
    return s / static_cast<double>(ss.steps());
}

double profile_loglik(const SufficientStats& ss, DeltaSide side, double lambda) {
    if (!(lambda > 0.0)) throw std::invalid_argument("lambda must be positive");
    const auto& tail = side == DeltaSide::in ? ss.in_tail_diff : ss.out_tail_diff;
    const auto& steps = side == DeltaSide::in ? ss.in_steps : ss.out_steps;
    double s = 0;
    for (std::size_t i = 0; i < tail.size(); ++i)
        s += static_cast<double>(tail[i]) * std::log(static_cast<double>(i) + lambda);
    s -= static_cast<double>(ss.free_count(side)) * std::log(lambda);
    for (std::size_t k = 0; k < steps.size(); ++k)
        s -= std::log(steps.time[k] + lambda * steps.nodes[k]);
    return s / static_cast<double>(ss.steps());
}

DeltaEstimate mle_delta(const SufficientStats& ss, const DeltaBracket& bracket,
                        DeltaSide side, bool allow_boundary) {
    bracket.validate();
    auto score = [&](double lambda) { return score_delta(ss, side, lambda); };

    DeltaEstimate est;
    est.info.bracket_lo = bracket.lo;
    est.info.bracket_hi = bracket.hi;

    const double f_lo = score(bracket.lo);
    const double f_hi = score(bracket.hi);
    if (f_lo == 0.0 || f_hi == 0.0 || (f_lo > 0.0) != (f_hi > 0.0)) {
        const RootResult r = brent_root(score, bracket.lo, bracket.hi, 1e-12);
        if (!r.converged)
            throw numeric_error("delta score root did not converge");
        est.value = r.x;
        est.info.iterations = r.iterations;
        est.info.residual = r.fx;
        return est;
    }
    if (!allow_boundary)
        throw numeric_error("delta score has the same sign at both bracket endpoints");
    // no interior root: report the better endpoint of the profile likelihood
    const double pl_lo = profile_loglik(ss, side, bracket.lo);
    const double pl_hi = profile_loglik(ss, side, bracket.hi);
    est.value = pl_lo >= pl_hi ? bracket.lo : bracket.hi;
    est.info.residual = pl_lo >= pl_hi ? f_lo : f_hi;
    est.info.boundary = true;
    return est;
}

double log_likelihood(const GrowthHistory& h, const Params& p) {
    p.validate();
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    double ll = 0;
    bool impossible = false;
    replay_history(h, [&](std::size_t, std::uint64_t t_minus_1, const Edge& e, Scenario s,
                          const DegreeTracker& tracker) {
        if (impossible) return;
        const double prob = p.scenario_prob(s);
        if (prob <= 0.0) {
            impossible = true;
            return;
        }
        ll += std::log(prob);
        const double time = static_cast<double>(t_minus_1);
        const double nodes = static_cast<double>(tracker.node_count());
        if (in_class(s)) {
            ll += std::log(tracker.in_degree(e.dst) + p.delta_in);
            ll -= std::log(time + p.delta_in * nodes);
        }
        if (out_class(s)) {
            ll += std::log(tracker.out_degree(e.src) + p.delta_out);
            ll -= std::log(time + p.delta_out * nodes);
        }
    });
    return impossible ? neg_inf : ll;
}

double log_likelihood(const SufficientStats& ss, const Params& p) {
    p.validate();
    constexpr double neg_inf = -std::numeric_limits<double>::infinity();
    double ll = 0;
    for (int j = 0; j < 5; ++j) {
        const auto count = ss.scenario_counts[j];
        if (count == 0) continue;
        const double prob = p.scenario_prob(static_cast<Scenario>(j + 1));
        if (prob <= 0.0) return neg_inf;
        ll += static_cast<double>(count) * std::log(prob);
    }
    for (std::size_t i = 0; i < ss.in_tail_diff.size(); ++i)
        ll += static_cast<double>(ss.in_tail_diff[i]) *
              std::log(static_cast<double>(i) + p.delta_in);
    ll -= static_cast<double>(ss.free_count(DeltaSide::in)) * std::log(p.delta_in);
    for (std::size_t j = 0; j < ss.out_tail_diff.size(); ++j)
        ll += static_cast<double>(ss.out_tail_diff[j]) *
              std::log(static_cast<double>(j) + p.delta_out);
    ll -= static_cast<double>(ss.free_count(DeltaSide::out)) * std::log(p.delta_out);
    for (std::size_t k = 0; k < ss.in_steps.size(); ++k)
        ll -= std::log(ss.in_steps.time[k] + p.delta_in * ss.in_steps.nodes[k]);
    for (std::size_t k = 0; k < ss.out_steps.size(); ++k)
        ll -= std::log(ss.out_steps.time[k] + p.delta_out * ss.out_steps.nodes[k]);
    return ll;
}

namespace {

// The two scalar information terms of the block matrix, with the degree sum
// over empirical tails.
double information_term(const std::vector<std::uint64_t>& tails, std::uint64_t n,
                        double delta, double free_prob, double class_prob, double beta) {
    double s = 0;
    for (std::size_t i = 0; i < tails.size(); ++i) {
        const double d = static_cast<double>(i) + delta;
        s += static_cast<double>(tails[i]) / static_cast<double>(n) / (d * d);
    }
    const double one_minus_beta = 1.0 - beta;
    const double denom = 1.0 + delta * one_minus_beta;
    return s - free_prob / (delta * delta) -
           class_prob * one_minus_beta * one_minus_beta / (denom * denom);
}

}  // namespace

CovMatrix fisher_information(const Params& p, const DegreeStats& stats,
                             std::vector<std::string>* warnings) {
    p.validate();
    if (!p.basic())
        throw std::domain_error("Fisher information is available for the basic model only");
    const double i_in = information_term(stats.in_tail, stats.n, p.delta_in, p.gamma,
                                         p.alpha + p.beta, p.beta);
    const double i_out = information_term(stats.out_tail, stats.n, p.delta_out, p.alpha,
                                          p.gamma + p.beta, p.beta);
    if (warnings) {
        if (i_in <= 0.0) warnings->push_back("in-degree information term is not positive");
        if (i_out <= 0.0) warnings->push_back("out-degree information term is not positive");
        if (p.alpha <= 0.0 || p.beta <= 0.0 || p.gamma <= 0.0)
            warnings->push_back("information matrix singular at a probability boundary");
    }
    CovMatrix m = CovMatrix::zeros(4);
    m.at(0, 0) = (1.0 - p.beta) / (p.alpha * p.gamma);
    m.at(0, 1) = m.at(1, 0) = 1.0 / p.gamma;
    m.at(1, 1) = (1.0 - p.alpha) / (p.beta * p.gamma);
    m.at(2, 2) = i_in;
    m.at(3, 3) = i_out;
    return m;
}

CovMatrix mle_covariance(const Params& p, const DegreeStats& stats,
                         std::vector<std::string>* warnings) {
    p.validate();
    if (!p.basic())
        throw std::domain_error("plug-in covariance is available for the basic model only");
    const double i_in = information_term(stats.in_tail, stats.n, p.delta_in, p.gamma,
                                         p.alpha + p.beta, p.beta);
    const double i_out = information_term(stats.out_tail, stats.n, p.delta_out, p.alpha,
                                          p.gamma + p.beta, p.beta);
    CovMatrix m = CovMatrix::zeros(4);
    m.at(0, 0) = p.alpha * (1.0 - p.alpha);
    m.at(0, 1) = m.at(1, 0) = -p.alpha * p.beta;
    m.at(1, 1) = p.beta * (1.0 - p.beta);
    const double nan = std::nan("");
    if (i_in > 0.0) {
        m.at(2, 2) = 1.0 / i_in;
    } else {
        m.at(2, 2) = nan;
        if (warnings) warnings->push_back("in-degree information term is not positive");
    }
    if (i_out > 0.0) {
        m.at(3, 3) = 1.0 / i_out;
    } else {
        m.at(3, 3) = nan;
        if (warnings) warnings->push_back("out-degree information term is not positive");
    }
    return m;
}

FitResult fit_mle(const SufficientStats& ss, const MleOptions& opt) {
    FitResult fr;
    fr.method = FitMethod::full_mle;
    fr.extended = ss.extended || opt.force_extended;
    fr.n = ss.steps();

    const auto probs = scenario_prob_mles(ss, fr.extended);
    const DeltaEstimate din = mle_delta(ss, opt.bracket, DeltaSide::in);
    const DeltaEstimate dout = mle_delta(ss, opt.bracket, DeltaSide::out);
    fr.params = Params(probs[0], probs[1], probs[2], probs[3], probs[4],
                       din.value, dout.value);
    fr.in_solver = din.info;
    fr.out_solver = dout.info;
    const int flagged = fr.extended ? 5 : 3;
    for (int j = 0; j < flagged; ++j)
        fr.prob_boundary[j] = ss.scenario_counts[j] == 0;
    for (int j = 0; j < flagged; ++j)
        if (fr.prob_boundary[j])
            fr.warnings.push_back("scenario " + std::to_string(j + 1) +
                                  " never observed: estimate on the boundary");

    if (!fr.extended) {
        fr.covariance = mle_covariance(fr.params, ss.end_stats, &fr.warnings);
        fr.covariance_kind = CovKind::asymptotic;
        add_confidence_intervals(fr, opt.conf_level);
    } else {
        fr.warnings.push_back(
            "extended model: no closed-form information matrix, use bootstrap intervals");
    }
    return fr;
}

FitResult fit_mle(const GrowthHistory& h, const MleOptions& opt) {
    return fit_mle(sufficient_stats(h, opt.seed_correction), opt);
}

}  // namespace prefatt
