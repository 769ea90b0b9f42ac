#include "prefatt/snapshot_fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "prefatt/errors.hpp"
#include "prefatt/mle.hpp"
#include "prefatt/parallel.hpp"
#include "prefatt/root.hpp"
#include "prefatt/simulate.hpp"

namespace prefatt {

SnapshotMoments snapshot_moments(const DegreeStats& ds) {
    if (ds.n < 1) throw data_error("snapshot has no edges");
    SnapshotMoments m;
    m.n = ds.n;
    const double n = static_cast<double>(ds.n);
    m.beta_tilde = 1.0 - static_cast<double>(ds.node_count) / n;
    m.beta_in_range = m.beta_tilde >= 0.0 && m.beta_tilde < 1.0;
    m.in_tail_frac.reserve(ds.in_tail.size());
    for (auto c : ds.in_tail) m.in_tail_frac.push_back(static_cast<double>(c) / n);
    m.out_tail_frac.reserve(ds.out_tail.size());
    for (auto c : ds.out_tail) m.out_tail_frac.push_back(static_cast<double>(c) / n);
    m.in_zero_frac = static_cast<double>(ds.in_zero) / n;
    m.out_zero_frac = static_cast<double>(ds.out_zero) / n;
    return m;
}

double eta_from_delta(double delta, double beta) {
    return delta / (1.0 + delta * (1.0 - beta));
}

double delta_from_eta(double eta, double beta) {
    return eta / (1.0 - eta * (1.0 - beta));
}

namespace {

struct SideMoments {
    const std::vector<double>* tail_frac;
    double zero_frac;
};

SideMoments side_moments(const SnapshotMoments& m, DeltaSide side) {
    if (side == DeltaSide::in) return {&m.in_tail_frac, m.in_zero_frac};
    return {&m.out_tail_frac, m.out_zero_frac};
}

// f~_n(eta) = sum_{i>=1} tail_i / (1 + (1/i - (1-beta)) eta)
double f_tilde(const std::vector<double>& tail, double beta, double eta) {
    double s = 0;
    for (std::size_t i = 1; i < tail.size(); ++i) {
        const double inv_i = 1.0 / static_cast<double>(i);
        s += tail[i] / (1.0 + (inv_i - (1.0 - beta)) * eta);
    }
    return s;
}

// g~_n(eta) = (zero + beta) / (1 - eta * zero)
double g_tilde(double zero_frac, double beta, double eta) {
    return (zero_frac + beta) / (1.0 - eta * zero_frac);
}

// The approximate score equation solved in step 7 (and its out mirror):
//   sum_i tail_i/(i+delta) - (1 - a - beta)/delta - (a + beta)(1-beta)/(1 + (1-beta) delta)
double approx_score(const std::vector<double>& tail, double a, double beta, double delta) {
    double s = 0;
    for (std::size_t i = 0; i < tail.size(); ++i)
        s += tail[i] / (static_cast<double>(i) + delta);
    s -= (1.0 - a - beta) / delta;
    s -= (a + beta) * (1.0 - beta) / (1.0 + (1.0 - beta) * delta);
    return s;
}

double solve_approx_score(const std::vector<double>& tail, double a, double beta,
                          const DeltaBracket& bracket, SolverInfo& info,
                          const char* which) {
    auto f = [&](double delta) { return approx_score(tail, a, beta, delta); };
    info.bracket_lo = bracket.lo;
    info.bracket_hi = bracket.hi;
    const double f_lo = f(bracket.lo);
    const double f_hi = f(bracket.hi);
    if (f_lo != 0.0 && f_hi != 0.0 && (f_lo > 0.0) == (f_hi > 0.0))
        throw numeric_error(std::string(which) +
                            " approximate score equation has no sign change on the bracket");
    const RootResult r = brent_root(f, bracket.lo, bracket.hi, 1e-12);
    info.iterations += r.iterations;
    info.residual = r.fx;
    return r.x;
}

}  // namespace

Step2Result solve_step2(const SnapshotMoments& m, DeltaSide side, const DeltaBracket& bracket) {
    bracket.validate();
    if (!m.beta_in_range || !(m.beta_tilde > 0.0))
        throw numeric_error("beta_tilde = " + std::to_string(m.beta_tilde) +
                            " outside (0, 1); snapshot estimation undefined");
    const SideMoments sm = side_moments(m, side);
    const double beta = m.beta_tilde;

    // h~(eta) = 1/f~ - 1/g~; concave in the limit, so the root is unique
    // with high probability.
    auto h = [&](double eta) {
        return 1.0 / f_tilde(*sm.tail_frac, beta, eta) -
               (1.0 - eta * sm.zero_frac) / (sm.zero_frac + beta);
    };

    const double eta_lo = eta_from_delta(bracket.lo, beta);
    const double eta_hi = eta_from_delta(bracket.hi, beta);

    Step2Result res;
    res.info.bracket_lo = bracket.lo;
    res.info.bracket_hi = bracket.hi;

    auto brackets = scan_brackets_linear(h, eta_lo, eta_hi, 256);
    if (brackets.empty())
        throw numeric_error("step-2 moment equation has no sign change on the bracket");
    std::pair<double, double> chosen = brackets.front();
    if (brackets.size() > 1) {
        // pilot: bisect from the midpoint of the full interval, then keep
        // the detected root closest to the pilot
        res.info.multiple_roots = true;
        double lo = eta_lo, hi = eta_hi;
        double mid = 0.5 * (lo + hi);
        const bool rising = h(eta_lo) < 0.0;
        for (int iter = 0; iter < 60; ++iter) {
            const double hm = h(mid);
            if ((hm < 0.0) == rising) lo = mid; else hi = mid;
            mid = 0.5 * (lo + hi);
        }
        double best = std::numeric_limits<double>::infinity();
        for (const auto& b : brackets) {
            const double center = 0.5 * (b.first + b.second);
            if (std::abs(center - mid) < best) {
                best = std::abs(center - mid);
                chosen = b;
            }
        }
    }
    const RootResult r = brent_root(h, chosen.first, chosen.second, 1e-14);
    res.info.iterations = r.iterations;
    res.info.residual = r.fx;
    res.delta0 = delta_from_eta(r.x, beta);
    return res;
}

FitResult snapshot_fit(const DegreeStats& ds, const SnapshotOptions& opt) {
    const SnapshotMoments m = snapshot_moments(ds);
    if (!m.beta_in_range || !(m.beta_tilde > 0.0))
        throw numeric_error("beta_tilde = " + std::to_string(m.beta_tilde) +
                            " outside (0, 1): snapshot has N(n) >= n (or no repeat edges); "
                            "the snapshot estimator requires beta in (0, 1)");
    const double beta = m.beta_tilde;

    FitResult fr;
    fr.method = FitMethod::snapshot;
    fr.extended = false;
    fr.n = ds.n;

    // steps 2-3: pilot delta_in and alpha from the in-degree moments
    const Step2Result in0 = solve_step2(m, DeltaSide::in, opt.bracket);
    const double alpha0 = g_tilde(m.in_zero_frac, beta, eta_from_delta(in0.delta0, beta)) - beta;
    // steps 4-5: the out-degree mirror for delta_out and gamma
    const Step2Result out0 = solve_step2(m, DeltaSide::out, opt.bracket);
    const double gamma0 = g_tilde(m.out_zero_frac, beta, eta_from_delta(out0.delta0, beta)) - beta;

    if (!(alpha0 + gamma0 > 0.0))
        throw numeric_error("pilot probability estimates degenerate (alpha0 + gamma0 <= 0)");
    if (alpha0 < 0.0) fr.warnings.push_back("pilot alpha below zero, renormalization clamps it");
    if (gamma0 < 0.0) fr.warnings.push_back("pilot gamma below zero, renormalization clamps it");

    // step 6: renormalize so the probabilities sum to one exactly
    double alpha = std::max(alpha0, 0.0) * (1.0 - beta) / (std::max(alpha0, 0.0) + std::max(gamma0, 0.0));
    double gamma = (1.0 - beta) - alpha;

    // step 7: re-solve both approximate score equations at the renormalized
    // probabilities
    const double delta_in =
        solve_approx_score(m.in_tail_frac, alpha, beta, opt.bracket, fr.in_solver, "in-degree");
    const double delta_out =
        solve_approx_score(m.out_tail_frac, gamma, beta, opt.bracket, fr.out_solver, "out-degree");

    fr.in_solver.multiple_roots = in0.info.multiple_roots;
    fr.out_solver.multiple_roots = out0.info.multiple_roots;
    fr.params = Params(alpha, beta, gamma, delta_in, delta_out);
    fr.prob_boundary[0] = alpha <= 0.0;
    fr.prob_boundary[2] = gamma <= 0.0;
    return fr;
}

FitResult snapshot_fit(const Snapshot& s, const SnapshotOptions& opt) {
    return snapshot_fit(degree_stats_from_snapshot(s), opt);
}

void bootstrap_ci(FitResult& fr, std::uint64_t n_edges, const BootstrapOptions& opt) {
    fr.params.validate();
    if (fr.method == FitMethod::snapshot || !fr.extended) {
        if (!(fr.params.alpha > 0.0) || !(fr.params.beta > 0.0) || !(fr.params.gamma > 0.0))
            throw numeric_error("fitted probabilities on the boundary: bootstrap undefined");
    }
    if (fr.any_boundary())
        throw numeric_error("fitted parameters flagged at a bracket boundary: bootstrap undefined");
    if (opt.reps < 2) throw std::invalid_argument("bootstrap needs at least 2 replicates");

    const auto names = fr.coordinate_names();
    const std::size_t dim = names.size();
    std::vector<std::vector<double>> draws(opt.reps);
    std::vector<std::uint8_t> ok(opt.reps, 0);

    SimConfig cfg;
    cfg.params = fr.params;
    cfg.target_edges = n_edges;
    cfg.rng_seed = opt.rng_seed;

    parallel_for(opt.reps, [&](std::uint64_t k) {
        SimConfig rep_cfg = cfg;
        rep_cfg.rng_seed = stream_seed(opt.rng_seed, k);
        try {
            const GrowthHistory h = simulate(rep_cfg);
            FitResult refit;
            if (fr.method == FitMethod::snapshot) {
                SnapshotOptions sopt;
                sopt.bracket = opt.bracket;
                refit = snapshot_fit(degree_stats_from_snapshot(h.to_snapshot()), sopt);
            } else {
                MleOptions mopt;
                mopt.bracket = opt.bracket;
                mopt.force_extended = fr.extended;
                refit = fit_mle(h, mopt);
            }
            draws[k] = refit.coordinates();
            ok[k] = 1;
        } catch (const numeric_error&) {
            // counted below
        } catch (const data_error&) {
        }
    }, opt.threads);

    std::uint64_t failures = 0;
    std::vector<std::vector<double>> good;
    good.reserve(opt.reps);
    for (std::uint64_t k = 0; k < opt.reps; ++k) {
        if (ok[k]) good.push_back(std::move(draws[k]));
        else ++failures;
    }
    if (static_cast<double>(failures) > opt.max_failure_rate * static_cast<double>(opt.reps))
        throw numeric_error("bootstrap failure rate " + std::to_string(failures) + "/" +
                            std::to_string(opt.reps) + " exceeds the allowed rate");
    if (failures > 0)
        fr.warnings.push_back(std::to_string(failures) + " of " + std::to_string(opt.reps) +
                              " bootstrap replicates failed and were dropped");

    const double m = static_cast<double>(good.size());
    std::vector<double> mu(dim, 0.0);
    for (const auto& row : good)
        for (std::size_t i = 0; i < dim; ++i) mu[i] += row[i];
    for (auto& v : mu) v /= m;

    CovMatrix cov = CovMatrix::zeros(dim);
    for (const auto& row : good)
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j)
                cov.at(i, j) += (row[i] - mu[i]) * (row[j] - mu[j]);
    for (auto& v : cov.a) v /= (m - 1.0);

    fr.covariance = std::move(cov);
    fr.covariance_kind = CovKind::bootstrap;
    fr.rng_seed = opt.rng_seed;
    add_confidence_intervals(fr, opt.level);
}

}  // namespace prefatt
