#include "prefatt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "prefatt/errors.hpp"
#include "prefatt/mle.hpp"
#include "prefatt/parallel.hpp"
#include "prefatt/simulate.hpp"
#include "prefatt/snapshot_fit.hpp"

namespace prefatt {

namespace {

std::array<double, 4> basic_coords(const FitResult& fr) {
    return {fr.params.alpha, fr.params.beta, fr.params.delta_in, fr.params.delta_out};
}

}  // namespace

NormalizedSamples normalized_estimates(const std::vector<FitResult>& fits,
                                       const Params& truth) {
    NormalizedSamples out;
    const std::array<double, 4> t{truth.alpha, truth.beta, truth.delta_in, truth.delta_out};
    for (const FitResult& fr : fits) {
        if (fr.covariance_kind != CovKind::asymptotic || fr.covariance.dim < 4 || fr.n == 0) {
            ++out.skipped;
            continue;
        }
        const auto est = basic_coords(fr);
        const double sqrt_n = std::sqrt(static_cast<double>(fr.n));
        bool usable = true;
        std::array<double, 4> z{};
        for (int i = 0; i < 4; ++i) {
            const double var = fr.covariance.at(i, i);
            if (!(var > 0.0) || !std::isfinite(var)) {
                usable = false;
                break;
            }
            z[i] = sqrt_n * (est[i] - t[i]) / std::sqrt(var);
        }
        if (!usable) {
            ++out.skipped;
            continue;
        }
        for (int i = 0; i < 4; ++i) out.standardized[i].push_back(z[i]);
    }
    for (int i = 0; i < 4; ++i) out.qq[i] = qq_against_normal(out.standardized[i]);
    return out;
}

AreEstimates are_table(const std::vector<FitResult>& mle_fits,
                       const std::vector<FitResult>& snap_fits) {
    if (mle_fits.size() != snap_fits.size())
        throw std::invalid_argument("ARE needs paired replication sets of equal size");
    AreEstimates out;
    out.reps = mle_fits.size();
    out.low_rep_warning = out.reps < 30;
    for (int i = 0; i < 4; ++i) {
        std::vector<double> a, b;
        a.reserve(mle_fits.size());
        b.reserve(snap_fits.size());
        for (const auto& fr : mle_fits) a.push_back(basic_coords(fr)[i]);
        for (const auto& fr : snap_fits) b.push_back(basic_coords(fr)[i]);
        const double vb = sample_variance(b);
        out.are[i] = vb > 0.0 ? sample_variance(a) / vb : 1.0;
    }
    return out;
}

PairedFits paired_replications(const Params& params, std::uint64_t n, std::uint64_t reps,
                               std::uint64_t seed, const DeltaBracket& bracket,
                               unsigned threads) {
    PairedFits out;
    std::vector<FitResult> mle(reps), snap(reps);
    std::vector<std::uint8_t> ok(reps, 0);

    SimConfig cfg;
    cfg.params = params;
    cfg.target_edges = n;
    cfg.rng_seed = seed;
    cfg.validate();

    MleOptions mopt;
    mopt.bracket = bracket;
    SnapshotOptions sopt;
    sopt.bracket = bracket;

    parallel_for(reps, [&](std::uint64_t k) {
        SimConfig rep_cfg = cfg;
        rep_cfg.rng_seed = stream_seed(seed, k);
        try {
            const GrowthHistory h = simulate(rep_cfg);
            mle[k] = fit_mle(h, mopt);
            snap[k] = snapshot_fit(degree_stats_from_snapshot(h.to_snapshot()), sopt);
            ok[k] = 1;
        } catch (const numeric_error&) {
        } catch (const data_error&) {
        }
    }, threads);

    for (std::uint64_t k = 0; k < reps; ++k) {
        if (!ok[k]) {
            ++out.failures;
            continue;
        }
        out.mle.push_back(std::move(mle[k]));
        out.snap.push_back(std::move(snap[k]));
    }
    return out;
}

std::vector<StudyCell> sensitivity_study(const StudyConfig& cfg) {
    std::vector<StudyCell> cells;
    cells.reserve(cfg.rows.size());
    for (std::size_t r = 0; r < cfg.rows.size(); ++r) {
        const StudyRow& row = cfg.rows[r];
        StudyCell cell;
        cell.row = row;
        try {
            const std::uint64_t row_seed = stream_seed(cfg.master_seed, 0x10000 + r);
            const PairedFits fits = paired_replications(row.params, row.n, row.reps, row_seed,
                                                        cfg.bracket, cfg.threads);
            cell.failures = fits.failures;
            if (fits.mle.empty()) throw numeric_error("all replications failed");
            for (int i = 0; i < 4; ++i) {
                std::vector<double> a, b;
                for (const auto& fr : fits.mle) a.push_back(basic_coords(fr)[i]);
                for (const auto& fr : fits.snap) b.push_back(basic_coords(fr)[i]);
                cell.mean_mle[i] = mean(a);
                cell.mean_snap[i] = mean(b);
            }
            cell.are = are_table(fits.mle, fits.snap).are;
            cell.ok = true;
        } catch (const std::exception& e) {
            cell.ok = false;
            cell.message = e.what();
        }
        cells.push_back(std::move(cell));
    }
    return cells;
}

namespace {

// node fraction at each degree >= 1, from a tail-count vector
std::vector<DegreePoint> degree_frequencies(const std::vector<std::uint64_t>& tails,
                                            std::uint64_t node_count) {
    std::vector<DegreePoint> out;
    const double n = static_cast<double>(node_count);
    // point counts by differencing: N_d = N_{>d-1} - N_{>d}
    for (std::size_t d = 1; d <= tails.size(); ++d) {
        const std::uint64_t above = d < tails.size() ? tails[d] : 0;
        const std::uint64_t count = tails[d - 1] - above;
        if (count > 0)
            out.push_back({d, static_cast<double>(count) / n});
    }
    return out;
}

GofSide build_side(std::vector<DegreePoint> observed,
                   std::vector<std::vector<DegreePoint>> sims) {
    GofSide side;
    side.observed = std::move(observed);
    side.sims = std::move(sims);

    std::map<std::uint64_t, std::pair<double, double>> band;  // degree -> (lo, hi)
    for (const auto& sim : side.sims) {
        for (const auto& pt : sim) {
            auto it = band.find(pt.degree);
            if (it == band.end())
                band.emplace(pt.degree, std::make_pair(pt.freq, pt.freq));
            else {
                it->second.first = std::min(it->second.first, pt.freq);
                it->second.second = std::max(it->second.second, pt.freq);
            }
        }
    }
    side.band.reserve(band.size());
    for (const auto& [d, lohi] : band) side.band.push_back({d, lohi.first, lohi.second});

    std::uint64_t inside = 0;
    for (const auto& pt : side.observed) {
        const auto it = band.find(pt.degree);
        if (it != band.end() && pt.freq >= it->second.first && pt.freq <= it->second.second)
            ++inside;
    }
    side.inside_fraction = side.observed.empty()
                               ? 1.0
                               : static_cast<double>(inside) /
                                     static_cast<double>(side.observed.size());
    return side;
}

}  // namespace

GofEnvelope gof_envelope(const Params& fitted, std::uint64_t n, std::uint64_t sims,
                         const Snapshot& observed, std::uint64_t seed, unsigned threads) {
    if (sims < 2) throw std::invalid_argument("envelope needs at least 2 simulations");

    SimConfig cfg;
    cfg.params = fitted;
    cfg.target_edges = n;
    cfg.rng_seed = seed;
    cfg.validate();

    std::vector<std::vector<DegreePoint>> in_sims(sims), out_sims(sims);
    parallel_for(sims, [&](std::uint64_t k) {
        SimConfig rep_cfg = cfg;
        rep_cfg.rng_seed = stream_seed(seed, k);
        const GrowthHistory h = simulate(rep_cfg);
        const DegreeTracker tracker = replay_history(
            h, [](std::size_t, std::uint64_t, const Edge&, Scenario, const DegreeTracker&) {});
        in_sims[k] = degree_frequencies(tracker.in_tails(), tracker.node_count());
        out_sims[k] = degree_frequencies(tracker.out_tails(), tracker.node_count());
    }, threads);

    const DegreeStats obs = degree_stats_from_snapshot(observed);
    // DegreeStats tails carry a trailing zero entry; the tracker form does not
    std::vector<std::uint64_t> obs_in(obs.in_tail.begin(), obs.in_tail.end() - 1);
    std::vector<std::uint64_t> obs_out(obs.out_tail.begin(), obs.out_tail.end() - 1);

    GofEnvelope env;
    env.n = n;
    env.num_sims = sims;
    env.seed = seed;
    env.in = build_side(degree_frequencies(obs_in, obs.node_count), std::move(in_sims));
    env.out = build_side(degree_frequencies(obs_out, obs.node_count), std::move(out_sims));
    return env;
}

}  // namespace prefatt
