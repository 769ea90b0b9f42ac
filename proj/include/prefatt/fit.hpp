#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "prefatt/params.hpp"

namespace prefatt {

enum class FitMethod { full_mle, snapshot };
enum class DeltaSide { in, out };

/// Admissible range [lo, hi] for the delta offsets. The defaults cover all
/// experiments in this package by a wide margin.
struct DeltaBracket {
    double lo = 1e-4;
    double hi = 1e4;

    void validate() const;
};

struct SolverInfo {
    int iterations = 0;
    double residual = 0;
    double bracket_lo = 0;
    double bracket_hi = 0;
    bool boundary = false;        // estimate pinned at a bracket endpoint
    bool multiple_roots = false;  // grid scan saw more than one sign change
};

// Row-major square matrix, sized 4 (basic) or 6 (extended bootstrap).
struct CovMatrix {
    std::size_t dim = 0;
    std::vector<double> a;

    static CovMatrix zeros(std::size_t d) { return {d, std::vector<double>(d * d, 0.0)}; }
    double& at(std::size_t i, std::size_t j) { return a[i * dim + j]; }
    double at(std::size_t i, std::size_t j) const { return a[i * dim + j]; }
    bool empty() const { return dim == 0; }
};

enum class CovKind {
    none,
    asymptotic,  // covariance of sqrt(n)(estimate - truth); CI scale sigma/sqrt(n)
    bootstrap,   // covariance of the estimate itself; CI scale sigma
};

struct IntervalRow {
    std::string name;
    double estimate = 0;
    double lo = 0;
    double hi = 0;
    bool valid = false;
};

struct FitResult {
    Params params;
    FitMethod method = FitMethod::full_mle;
    bool extended = false;
    std::uint64_t n = 0;  // observed transitions n - n0

    CovMatrix covariance;
    CovKind covariance_kind = CovKind::none;
    std::vector<IntervalRow> conf_intervals;
    double conf_level = 0;

    SolverInfo in_solver, out_solver;
    bool prob_boundary[5] = {false, false, false, false, false};
    std::vector<std::string> warnings;
    std::uint64_t rng_seed = 0;  // seed behind bootstrap intervals, if any

    bool any_boundary() const;

    // Estimated coordinates in covariance order: (alpha, beta, delta_in,
    // delta_out), extended adds (gamma, xi) after beta.
    std::vector<std::string> coordinate_names() const;
    std::vector<double> coordinates() const;
};

/// Wald intervals estimate_i +- z_{(1-level)/2} * scale_i, where scale_i is
/// sqrt(cov_ii / n) for asymptotic covariances and sqrt(cov_ii) for
/// bootstrap ones. Boundary or degenerate coordinates are marked invalid.
void add_confidence_intervals(FitResult& fr, double level);

}  // namespace prefatt
