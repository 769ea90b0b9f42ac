#include "prefatt/params.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace prefatt {

namespace {

void check_prob(double v, const char* name) {
    if (!(v >= 0.0 && v <= 1.0) || std::isnan(v))
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1]");
}

}  // namespace

Params::Params(double alpha_, double beta_, double gamma_, double din, double dout)
    : Params(alpha_, beta_, gamma_, 0.0, 0.0, din, dout) {}

Params::Params(double alpha_, double beta_, double gamma_, double xi_, double rho_,
               double din, double dout)
    : alpha(alpha_), beta(beta_), gamma(gamma_), xi(xi_), rho(rho_),
      delta_in(din), delta_out(dout) {
    validate();
}

double Params::scenario_prob(Scenario s) const {
    switch (s) {
        case Scenario::alpha: return alpha;
        case Scenario::beta: return beta;
        case Scenario::gamma: return gamma;
        case Scenario::both_new: return xi;
        case Scenario::self_loop: return rho;
    }
    throw std::invalid_argument("unknown scenario tag");
}

Params Params::mirrored() const {
    Params m = *this;
    m.alpha = gamma;
    m.gamma = alpha;
    m.delta_in = delta_out;
    m.delta_out = delta_in;
    return m;
}

void Params::validate() const {
    check_prob(alpha, "alpha");
    check_prob(beta, "beta");
    check_prob(gamma, "gamma");
    check_prob(xi, "xi");
    check_prob(rho, "rho");
    const double sum = alpha + beta + gamma + xi + rho;
    if (std::abs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("scenario probabilities must sum to 1 (got " +
                                    std::to_string(sum) + ")");
    if (!(delta_in > 0.0) || !std::isfinite(delta_in))
        throw std::invalid_argument("delta_in must be positive");
    if (!(delta_out > 0.0) || !std::isfinite(delta_out))
        throw std::invalid_argument("delta_out must be positive");
}

void Params::require_interior() const {
    validate();
    if (alpha >= 1.0 || beta >= 1.0 || gamma >= 1.0)
        throw std::invalid_argument("each of alpha, beta, gamma must be strictly below 1");
}

PowerLawIndices power_law_indices(const Params& p) {
    p.require_interior();
    if (!p.basic())
        throw std::domain_error("power-law indices are defined for the basic model only");
    if (!(p.alpha * p.delta_in + p.gamma > 0.0))
        throw std::domain_error(
            "in-degree power law degenerate: requires alpha*delta_in + gamma > 0");
    if (!(p.gamma * p.delta_out + p.alpha > 0.0))
        throw std::domain_error(
            "out-degree power law degenerate: requires gamma*delta_out + alpha > 0");
    PowerLawIndices idx{};
    idx.iota_in = 1.0 + (1.0 + p.delta_in * (p.alpha + p.gamma)) / (p.alpha + p.beta);
    idx.iota_out = 1.0 + (1.0 + p.delta_out * (p.alpha + p.gamma)) / (p.beta + p.gamma);
    return idx;
}

}  // namespace prefatt
