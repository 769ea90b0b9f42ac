#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "prefatt/errors.hpp"

namespace prefatt {

struct RootResult {
    double x = 0;
    double fx = 0;
    int iterations = 0;
    bool converged = false;
};

/// Brent's method on a bracketing interval [a, b] with f(a) f(b) <= 0.
/// Throws numeric_error when the endpoints do not bracket a root.
template <typename F>
RootResult brent_root(F&& f, double a, double b, double xtol = 1e-12, int max_iter = 200) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return {a, fa, 0, true};
    if (fb == 0.0) return {b, fb, 0, true};
    if ((fa > 0.0) == (fb > 0.0))
        throw numeric_error("root is not bracketed on the given interval");

    double c = a, fc = fa;
    double d = b - a, e = d;
    RootResult res;
    for (int iter = 1; iter <= max_iter; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            e = d = b - a;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * 2.22e-16 * std::abs(b) + 0.5 * xtol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) {
            res = {b, fb, iter, true};
            return res;
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p, q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol1 * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < (min1 < min2 ? min1 : min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
    }
    res = {b, fb, max_iter, false};
    return res;
}

/// Sign-change subintervals of f on a geometric grid over [lo, hi] (both
/// positive). Estimation brackets span several orders of magnitude, so the
/// scan is done in log space.
template <typename F>
std::vector<std::pair<double, double>> scan_brackets_geometric(F&& f, double lo, double hi,
                                                               int grid = 128) {
    std::vector<std::pair<double, double>> out;
    double x_prev = lo;
    double f_prev = f(lo);
    const double step = std::log(hi / lo) / grid;
    for (int k = 1; k <= grid; ++k) {
        const double x = k == grid ? hi : lo * std::exp(step * k);
        const double fx = f(x);
        if (f_prev == 0.0 || (f_prev > 0.0) != (fx > 0.0)) out.emplace_back(x_prev, x);
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

/// Same scan on a linear grid (used for the bounded eta interval).
template <typename F>
std::vector<std::pair<double, double>> scan_brackets_linear(F&& f, double lo, double hi,
                                                            int grid = 128) {
    std::vector<std::pair<double, double>> out;
    double x_prev = lo;
    double f_prev = f(lo);
    const double step = (hi - lo) / grid;
    for (int k = 1; k <= grid; ++k) {
        const double x = k == grid ? hi : lo + step * k;
        const double fx = f(x);
        if (f_prev == 0.0 || (f_prev > 0.0) != (fx > 0.0)) out.emplace_back(x_prev, x);
        x_prev = x;
        f_prev = fx;
    }
    return out;
}

}  // namespace prefatt
