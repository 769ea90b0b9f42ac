#pragma once

#include <cstdint>

namespace prefatt {

// Edge-creation schemes. both_new and self_loop occur only in the
// extended five-scenario model.
enum class Scenario : std::uint8_t {
    alpha = 1,      // new source -> existing target, target by in-degree
    beta = 2,       // existing source -> existing target
    gamma = 3,      // existing source -> new target, source by out-degree
    both_new = 4,   // two new nodes joined by one edge
    self_loop = 5,  // one new node with a self loop
};

constexpr int scenario_index(Scenario s) { return static_cast<int>(s) - 1; }

/// Model parameter vector (alpha, beta, gamma[, xi, rho], delta_in, delta_out).
/// The scenario probabilities live on the simplex (sum to one within 1e-12);
/// xi = rho = 0 selects the basic three-scenario model. The offsets delta_in
/// and delta_out are strictly positive.
struct Params {
    double alpha = 0;
    double beta = 0;
    double gamma = 0;
    double xi = 0;
    double rho = 0;
    double delta_in = 1;
    double delta_out = 1;

    Params() = default;
    Params(double alpha, double beta, double gamma, double delta_in, double delta_out);
    Params(double alpha, double beta, double gamma, double xi, double rho,
           double delta_in, double delta_out);

    bool basic() const { return xi == 0.0 && rho == 0.0; }

    double scenario_prob(Scenario s) const;

    // Swaps the roles of the degree marginals: alpha <-> gamma and
    // delta_in <-> delta_out. The out-degree limit theory is the in-degree
    // theory of the mirrored parameters.
    Params mirrored() const;

    // Simplex and positivity checks; throws std::invalid_argument.
    // Probabilities may sit on the boundary of [0, 1] so that boundary
    // estimates remain representable.
    void validate() const;

    // Additionally requires alpha, beta, gamma strictly below 1, the model
    // assumption behind simulation and the limit formulas.
    void require_interior() const;
};

struct PowerLawIndices {
    double iota_in;
    double iota_out;
};

// Tail indices of the limiting marginal degree distributions,
// iota_in = 1 + (1 + delta_in (alpha+gamma)) / (alpha+beta) and the
// out-degree mirror. Basic model only; throws std::domain_error when the
// non-degeneracy conditions alpha*delta_in + gamma > 0 (resp.
// gamma*delta_out + alpha > 0) fail.
PowerLawIndices power_law_indices(const Params& p);

}  // namespace prefatt
