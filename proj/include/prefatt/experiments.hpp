#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "prefatt/fit.hpp"
#include "prefatt/graph.hpp"
#include "prefatt/mathstats.hpp"

namespace prefatt {

/// Standardized estimates sqrt(n) (est_i - truth_i) / sigma_hat_i per basic
/// coordinate (alpha, beta, delta_in, delta_out), each with its plug-in
/// sigma_hat from the fit's own covariance, plus normal QQ data.
struct NormalizedSamples {
    std::array<std::vector<double>, 4> standardized;
    std::array<QQData, 4> qq;
    std::uint64_t skipped = 0;  // fits without a usable covariance
};

NormalizedSamples normalized_estimates(const std::vector<FitResult>& fits, const Params& truth);

/// Per-coordinate variance ratios Var(MLE)/Var(snapshot) over paired
/// replication sets.
struct AreEstimates {
    std::array<double, 4> are{};
    std::uint64_t reps = 0;
    bool low_rep_warning = false;  // fewer than 30 pairs
};

AreEstimates are_table(const std::vector<FitResult>& mle_fits,
                       const std::vector<FitResult>& snap_fits);

/// One replication batch: simulate reps networks at the given parameters and
/// fit each by full MLE and by the snapshot method. Failures are isolated.
struct PairedFits {
    std::vector<FitResult> mle;
    std::vector<FitResult> snap;
    std::uint64_t failures = 0;
};

PairedFits paired_replications(const Params& params, std::uint64_t n, std::uint64_t reps,
                               std::uint64_t seed, const DeltaBracket& bracket = {},
                               unsigned threads = 0);

struct StudyRow {
    std::uint64_t n = 0;
    Params params;
    std::uint64_t reps = 0;
};

struct StudyConfig {
    std::uint64_t master_seed = 1;
    std::vector<StudyRow> rows;
    DeltaBracket bracket{};
    unsigned threads = 0;
};

/// One table row per config row: replication means of both estimators and
/// the per-coordinate AREs, deterministic under the master seed.
struct StudyCell {
    StudyRow row;
    std::array<double, 4> mean_mle{};
    std::array<double, 4> mean_snap{};
    std::array<double, 4> are{};
    std::uint64_t failures = 0;
    bool ok = false;
    std::string message;
};

std::vector<StudyCell> sensitivity_study(const StudyConfig& cfg);

/// Degree-frequency scatter of repeated simulations at fitted parameters,
/// with the pointwise min/max band, against the observed frequencies.
/// Frequencies are node fractions at each degree >= 1 (the log-log plotting
/// range). inside_fraction is the share of observed degree values whose
/// frequency falls inside the band.
struct DegreePoint {
    std::uint64_t degree = 0;
    double freq = 0;
};

struct EnvelopeBand {
    std::uint64_t degree = 0;
    double lo = 0;
    double hi = 0;
};

struct GofSide {
    std::vector<DegreePoint> observed;
    std::vector<EnvelopeBand> band;
    std::vector<std::vector<DegreePoint>> sims;
    double inside_fraction = 0;
};

struct GofEnvelope {
    GofSide in;
    GofSide out;
    std::uint64_t n = 0;
    std::uint64_t num_sims = 0;
    std::uint64_t seed = 0;
};

GofEnvelope gof_envelope(const Params& fitted, std::uint64_t n, std::uint64_t sims,
                         const Snapshot& observed, std::uint64_t seed = 1,
                         unsigned threads = 0);

}  // namespace prefatt
