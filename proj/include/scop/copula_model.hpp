#ifndef SCOP_COPULA_MODEL_HPP
#define SCOP_COPULA_MODEL_HPP

#include <array>
#include <vector>

namespace scop {

// Parameters of the four-component frailty mixture on the latent Gaussian
// scales: mixing weights pi over the co-existence patterns
// (noise/noise, signal/noise, noise/signal, signal/signal) plus the two
// signal components N(mu_j, var_j) with mu_j < 0. Noise is N(0,1).
struct ModelParams {
    std::array<double, 4> pi{};
    double mu1 = 0.0;
    double mu2 = 0.0;
    double var1 = 1.0;
    double var2 = 1.0;
};

// Throws std::invalid_argument on simplex violation (1e-12), mu >= 0, var <= 0.
void validate(const ModelParams& params);

enum class Component { noise, signal };

// log density of the component at z; noise ignores (mu, var) and is N(0,1).
double component_log_density(double z, Component which, double mu, double var);

// log P(Z >= z) for the component, stable far into the tail.
double component_log_survival(double z, Component which, double mu, double var);

// Marginal latent survival G_j(z): the pi-weighted mixture of noise and
// signal survivals for that margin.
double marginal_survival_G(double z, const ModelParams& params, int margin);

// Tabulated G_j on an even grid, for inverting the latent transform.
struct LatentGrid {
    std::vector<double> points;   // ascending
    std::vector<double> g_values; // strictly decreasing survival values
};

LatentGrid build_grid(const ModelParams& params, int margin, int n_points = 5000);

// z with G(z) ~= p by linear interpolation; p outside the tabulated range
// clamps to the nearest endpoint.
double inverse_G(double p, const LatentGrid& grid);

} // namespace scop

#endif
