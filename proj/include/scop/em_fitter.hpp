#ifndef SCOP_EM_FITTER_HPP
#define SCOP_EM_FITTER_HPP

#include "scop/copula_model.hpp"
#include "scop/data_model.hpp"
#include "scop/survival.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace scop {

// Latent images of the observed sample: z_{i,j} = G_j^{-1}(S_j(x_{i,j})).
// Censored coordinates all map to the cutoff image K_j.
struct PseudoData {
    std::vector<double> z1, z2;
    std::vector<int> delta1, delta2;
    double k1 = 0.0;
    double k2 = 0.0;

    std::size_t size() const { return z1.size(); }
};

// Row i holds P(b_i = k | data, theta) for the four co-existence patterns.
using PosteriorMatrix = std::vector<std::array<double, 4>>;

struct FitConfig {
    std::uint64_t seed = 0;
    double inner_tol = 1e-4;
    double outer_tol = 1e-3;
    int max_inner = 100;
    int max_outer = 50;
    int grid_points = 5000;
    int multistart = 1;
    int min_complete_cases = 50;
    double km_floor_scale = 0.1; // KM clamp at km_floor_scale / n
    // Pick theta0 by scanning signal-depth candidates and scoring them with
    // the dependence log-likelihood after a short EM adaptation. The nested
    // refresh iteration is only locally stable, so a basin-aware start
    // matters more than the random draws.
    bool init_search = true;

    static ModelParams default_init() {
        ModelParams p;
        p.pi = {0.7, 0.1, 0.1, 0.1};
        p.mu1 = p.mu2 = -2.0;
        p.var1 = p.var2 = 1.0;
        return p;
    }
    ModelParams init = default_init();
};

struct TraceEntry {
    int outer;
    int inner;
    double loglik;
};

struct FitResult {
    ModelParams params;
    PosteriorMatrix posteriors;
    std::vector<TraceEntry> trace;        // inner-EM log-likelihoods
    std::vector<double> outer_logliks;    // re-evaluated after each pseudo-data refresh
    PseudoData pseudo;
    bool converged = false;
    int n_outer_iters = 0;
    double loglik = 0.0;            // raw pseudo-data log-likelihood at the solution
    double dependence = 0.0;        // dependence_loglik at the solution
};

PseudoData compute_pseudo_data(const BivariateDataset& dataset, const MarginalSurvival& s1,
                               const MarginalSurvival& s2, const ModelParams& params,
                               int grid_points = 5000);

// Observed-data log-likelihood sum_i log sum_k pi_k h_{ki}, in log space.
double log_likelihood(const PseudoData& pseudo, const ModelParams& params);

// Dependence part of the likelihood: the joint over the product of the
// marginal mixtures. The pseudo-data margins are rank-pinned to the current
// parameters, so the raw log-likelihood is not comparable across outer
// refreshes (shrinking the signal scale inflates it); this one is.
double dependence_loglik(const PseudoData& pseudo, const ModelParams& params);

PosteriorMatrix e_step(const PseudoData& pseudo, const ModelParams& params);

std::array<double, 4> m_step_pi(const PosteriorMatrix& posteriors);

// Box constraints for the signal components.
inline constexpr double kMuLo = -50.0;
inline constexpr double kMuHi = -1e-6;
inline constexpr double kSigmaLo = 1e-3;
inline constexpr double kSigmaHi = 50.0;

struct SignalFit {
    double mu;
    double var;
    bool updated; // false when the component was effectively empty
};

// Maximizes sum_i w_i (delta_i ln g(z_i) + (1-delta_i) ln G(z_i)) over the
// box above; falls back to a grid search if the bounded quasi-Newton run
// fails to improve. Never returns a point worse than (prev_mu, prev_var).
SignalFit m_step_signal(std::span<const double> z, std::span<const int> deltas,
                        std::span<const double> weights, double prev_mu, double prev_var);

// Analytic gradient of the weighted censored-Gaussian objective in (mu, sigma);
// exposed for verification against finite differences.
void censored_gaussian_objective(std::span<const double> z, std::span<const int> deltas,
                                 std::span<const double> weights, double mu, double sigma,
                                 double* value, double* grad_mu, double* grad_sigma);

struct InnerEmResult {
    ModelParams params;
    PosteriorMatrix posteriors;
    std::vector<double> loglik_trace;
};

InnerEmResult inner_em(const PseudoData& pseudo, ModelParams params, double tol,
                       int max_iters);

FitResult fit(const BivariateDataset& dataset, const FitConfig& config);

// Same pipeline restricted to records reported in both lists.
FitResult fit_complete_case(const BivariateDataset& dataset, const FitConfig& config);

} // namespace scop

#endif
