#pragma once

#include <cstddef>
#include <vector>

namespace prefatt {

// Standard normal quantile (inverse CDF), accurate to machine precision.
double normal_quantile(double p);

double normal_cdf(double x);

// Upper tail of the chi-square distribution with k degrees of freedom.
double chi2_sf(double x, double k);

// Regularized incomplete gamma functions P(a, x) and Q(a, x) = 1 - P(a, x).
double gamma_p(double a, double x);
double gamma_q(double a, double x);

double mean(const std::vector<double>& xs);
double sample_variance(const std::vector<double>& xs);  // n-1 denominator
double skewness(const std::vector<double>& xs);         // m3 / m2^{3/2}
double pearson_correlation(const std::vector<double>& xs, const std::vector<double>& ys);

// Type-7 (linear interpolation) sample quantile of sorted data.
double quantile_sorted(const std::vector<double>& sorted, double p);

/// Normal QQ data for a sample: sorted values against normal quantiles at
/// plotting positions (k - 0.5)/m, plus the quartile-based QQ line.
struct QQData {
    std::vector<double> theoretical;
    std::vector<double> sample;  // sorted
    double correlation = 0;
    double skewness = 0;
    double line_slope = 0;      // through the quartile pair
    double line_intercept = 0;
};

QQData qq_against_normal(std::vector<double> values);

}  // namespace prefatt
