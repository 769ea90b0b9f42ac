#include "prefatt/fit.hpp"

#include <cmath>
#include <stdexcept>

#include "prefatt/mathstats.hpp"

namespace prefatt {

void DeltaBracket::validate() const {
    if (!(lo > 0.0) || !(lo < hi) || !std::isfinite(hi))
        throw std::invalid_argument("delta bracket must satisfy 0 < lo < hi < inf");
}

bool FitResult::any_boundary() const {
    if (in_solver.boundary || out_solver.boundary) return true;
    for (bool b : prob_boundary)
        if (b) return true;
    return false;
}

std::vector<std::string> FitResult::coordinate_names() const {
    if (extended)
        return {"alpha", "beta", "gamma", "xi", "delta_in", "delta_out"};
    return {"alpha", "beta", "delta_in", "delta_out"};
}

std::vector<double> FitResult::coordinates() const {
    if (extended)
        return {params.alpha, params.beta, params.gamma, params.xi,
                params.delta_in, params.delta_out};
    return {params.alpha, params.beta, params.delta_in, params.delta_out};
}

void add_confidence_intervals(FitResult& fr, double level) {
    if (!(level >= 0.0 && level < 1.0))
        throw std::invalid_argument("confidence level must lie in [0, 1)");
    fr.conf_level = level;
    fr.conf_intervals.clear();
    if (fr.covariance_kind == CovKind::none || fr.covariance.empty()) return;

    const double z = normal_quantile(1.0 - (1.0 - level) / 2.0);
    const auto names = fr.coordinate_names();
    const auto values = fr.coordinates();
    // which boundary flag guards each coordinate
    std::vector<bool> at_boundary(names.size(), false);
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (names[i] == "alpha") at_boundary[i] = fr.prob_boundary[0];
        else if (names[i] == "beta") at_boundary[i] = fr.prob_boundary[1];
        else if (names[i] == "gamma") at_boundary[i] = fr.prob_boundary[2];
        else if (names[i] == "xi") at_boundary[i] = fr.prob_boundary[3];
        else if (names[i] == "delta_in") at_boundary[i] = fr.in_solver.boundary;
        else if (names[i] == "delta_out") at_boundary[i] = fr.out_solver.boundary;
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        IntervalRow row;
        row.name = names[i];
        row.estimate = values[i];
        double var = i < fr.covariance.dim ? fr.covariance.at(i, i) : std::nan("");
        if (fr.covariance_kind == CovKind::asymptotic && fr.n > 0)
            var /= static_cast<double>(fr.n);
        if (std::isfinite(var) && var >= 0.0 && !at_boundary[i]) {
            const double half = z * std::sqrt(var);
            row.lo = values[i] - half;
            row.hi = values[i] + half;
            row.valid = true;
        } else {
            row.lo = row.hi = std::nan("");
            row.valid = false;
        }
        fr.conf_intervals.push_back(row);
    }
}

}  // namespace prefatt
