#include <doctest.h>

#include <stdexcept>

#include "prefatt/io.hpp"
#include "prefatt/params.hpp"
#include "prefatt/rng.hpp"

using namespace prefatt;

TEST_CASE("params validation enforces simplex and positivity") {
    CHECK_NOTHROW(Params(0.3, 0.5, 0.2, 2.0, 1.0));
    CHECK_NOTHROW(Params(0.25, 0.5, 0.2, 0.03, 0.02, 2.0, 1.0));
    CHECK_THROWS_AS(Params(0.3, 0.5, 0.3, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(-0.1, 0.6, 0.5, 2.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(0.3, 0.5, 0.2, 0.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(0.3, 0.5, 0.2, 2.0, -1.0), std::invalid_argument);
    // boundary probabilities are representable (estimates can sit there)...
    CHECK_NOTHROW(Params(0.0, 1.0, 0.0, 2.0, 1.0));
    // ...but are not a valid generative model
    CHECK_THROWS_AS(Params(0.0, 1.0, 0.0, 2.0, 1.0).require_interior(), std::invalid_argument);
}

TEST_CASE("params serialize/parse round trip is identity") {
    const Params p(0.1 + 0.2, 0.5, 1.0 - (0.1 + 0.2) - 0.5, 2.0 / 3.0, 1.0 / 7.0);
    const Params q = params_from_json(params_to_json(p));
    CHECK(q.alpha == p.alpha);
    CHECK(q.beta == p.beta);
    CHECK(q.gamma == p.gamma);
    CHECK(q.xi == p.xi);
    CHECK(q.rho == p.rho);
    CHECK(q.delta_in == p.delta_in);
    CHECK(q.delta_out == p.delta_out);
}

TEST_CASE("power-law indices") {
    const auto idx = power_law_indices(Params(0.3, 0.5, 0.2, 2.0, 1.0));
    CHECK(idx.iota_in == doctest::Approx(3.5).epsilon(1e-12));
    CHECK(idx.iota_out == doctest::Approx(1.0 + 1.5 / 0.7).epsilon(1e-12));

    // delta_in -> 0 with alpha = gamma = 0.5 leaves iota_in -> 3
    const auto small = power_law_indices(Params(0.5, 0.0, 0.5, 1e-12, 1.0));
    CHECK(small.iota_in == doctest::Approx(3.0).epsilon(1e-9));

    const auto third = power_law_indices(Params(0.2, 0.6, 0.2, 1.0, 1.0));
    CHECK(third.iota_in == doctest::Approx(2.75).epsilon(1e-12));

    CHECK_THROWS_AS(power_law_indices(Params(0.25, 0.5, 0.2, 0.03, 0.02, 2.0, 1.0)),
                    std::domain_error);
}

TEST_CASE("indices exceed 2 over a parameter grid") {
    RandomSource rng(7);
    for (int k = 0; k < 200; ++k) {
        double a = 0.05 + 0.9 * rng.uniform();
        double b = (1.0 - a) * rng.uniform() * 0.98;
        double g = 1.0 - a - b;
        if (g <= 1e-6 || a >= 0.999 || b >= 0.999 || g >= 0.999) continue;
        const double din = 0.01 + 10.0 * rng.uniform();
        const double dout = 0.01 + 10.0 * rng.uniform();
        const auto idx = power_law_indices(Params(a, b, g, din, dout));
        CHECK(idx.iota_in > 2.0);
        CHECK(idx.iota_out > 2.0);
    }
}

TEST_CASE("mirrored swaps the degree roles") {
    const Params p(0.3, 0.5, 0.2, 2.0, 1.0);
    const Params m = p.mirrored();
    CHECK(m.alpha == 0.2);
    CHECK(m.gamma == 0.3);
    CHECK(m.beta == 0.5);
    CHECK(m.delta_in == 1.0);
    CHECK(m.delta_out == 2.0);
    const auto idx = power_law_indices(p);
    const auto midx = power_law_indices(m);
    CHECK(midx.iota_in == doctest::Approx(idx.iota_out));
    CHECK(midx.iota_out == doctest::Approx(idx.iota_in));
}
