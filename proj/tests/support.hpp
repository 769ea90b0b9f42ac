#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <vector>

#include "prefatt/graph.hpp"
#include "prefatt/rng.hpp"

namespace testsupport {

using namespace prefatt;

// Brute-force per-node degree tally, the oracle for degree_stats_from_snapshot.
struct NaiveDegrees {
    std::vector<std::uint32_t> in, out;

    explicit NaiveDegrees(const Snapshot& s) : in(s.node_count, 0), out(s.node_count, 0) {
        for (const Edge& e : s.edges) {
            ++out[e.src - 1];
            ++in[e.dst - 1];
        }
    }

    std::vector<std::uint64_t> tail(const std::vector<std::uint32_t>& deg) const {
        std::uint32_t max_deg = 0;
        for (auto d : deg) max_deg = std::max(max_deg, d);
        std::vector<std::uint64_t> t(max_deg + 1, 0);
        for (auto d : deg)
            for (std::uint32_t i = 0; i < d; ++i) ++t[i];
        return t;  // t[i] = #nodes with degree > i, last entry 0
    }
};

inline Snapshot random_snapshot(RandomSource& rng, std::uint64_t nodes, std::uint64_t edges) {
    Snapshot s;
    s.node_count = nodes;
    for (std::uint64_t k = 0; k < edges; ++k) {
        const NodeId a = static_cast<NodeId>(1 + rng.bits() % nodes);
        const NodeId b = static_cast<NodeId>(1 + rng.bits() % nodes);
        s.edges.push_back({a, b});
    }
    return s;
}

// Golden-section maximizer, the independent check for the delta MLE.
template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol = 1e-10) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    while (b - a > tol * (1.0 + std::abs(a) + std::abs(b))) {
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        }
    }
    return 0.5 * (a + b);
}

// Least-squares slope of y against x.
inline double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double num = 0, den = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        num += (x[i] - mx) * (y[i] - my);
        den += (x[i] - mx) * (x[i] - mx);
    }
    return num / den;
}

}  // namespace testsupport
