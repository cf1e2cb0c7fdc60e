#include "scop/copula_model.hpp"

#include "scop/normal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace scop {

void validate(const ModelParams& params) {
    double sum = 0.0;
    for (double p : params.pi) {
        if (!(p >= 0.0))
            throw std::invalid_argument("model params: pi component < 0");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("model params: pi does not sum to 1");
    if (!(params.mu1 < 0.0) || !(params.mu2 < 0.0))
        throw std::invalid_argument("model params: signal means must be negative");
    if (!(params.var1 > 0.0) || !(params.var2 > 0.0))
        throw std::invalid_argument("model params: variances must be positive");
}

double component_log_density(double z, Component which, double mu, double var) {
    if (which == Component::noise)
        return norm_log_pdf(z);
    return norm_log_pdf((z - mu) / std::sqrt(var)) - 0.5 * std::log(var);
}

double component_log_survival(double z, Component which, double mu, double var) {
    if (which == Component::noise)
        return norm_log_sf(z);
    return norm_log_sf((z - mu) / std::sqrt(var));
}

namespace {

struct MarginMix {
    double w_noise, w_signal, mu, sd;
};

MarginMix margin_mix(const ModelParams& p, int margin) {
    if (margin == 1)
        return {p.pi[0] + p.pi[2], p.pi[1] + p.pi[3], p.mu1, std::sqrt(p.var1)};
    if (margin == 2)
        return {p.pi[0] + p.pi[1], p.pi[2] + p.pi[3], p.mu2, std::sqrt(p.var2)};
    throw std::invalid_argument("margin must be 1 or 2");
}

} // namespace

double marginal_survival_G(double z, const ModelParams& params, int margin) {
    const MarginMix m = margin_mix(params, margin);
    return m.w_noise * norm_sf(z) + m.w_signal * norm_sf((z - m.mu) / m.sd);
}

LatentGrid build_grid(const ModelParams& params, int margin, int n_points) {
    if (n_points < 2)
        throw std::invalid_argument("build_grid: need at least 2 points");
    const MarginMix m = margin_mix(params, margin);
    const double lo = std::min(-5.0, m.mu - 5.0 * m.sd);
    const double hi = std::max(5.0, m.mu + 5.0 * m.sd);

    LatentGrid grid;
    grid.points.resize(n_points);
    grid.g_values.resize(n_points);
    const double step = (hi - lo) / static_cast<double>(n_points - 1);
    for (int i = 0; i < n_points; ++i) {
        const double z = (i == n_points - 1) ? hi : lo + step * i;
        grid.points[i] = z;
        grid.g_values[i] = marginal_survival_G(z, params, margin);
    }
    // The mixture survival is strictly decreasing; in floating point the
    // tabulated values may saturate into flat stretches at the extreme tails
    // (e.g. a zero-weight component extending the range), which inverse_G
    // handles. Anything non-monotone is a real error.
    for (int i = 1; i < n_points; ++i)
        if (!(grid.g_values[i] <= grid.g_values[i - 1]))
            throw std::runtime_error("build_grid: survival values not non-increasing");
    if (!(grid.g_values.front() > grid.g_values.back()))
        throw std::runtime_error("build_grid: survival values degenerate");
    return grid;
}

double inverse_G(double p, const LatentGrid& grid) {
    const auto& g = grid.g_values;
    const auto& z = grid.points;
    if (p >= g.front())
        return z.front();
    if (p <= g.back())
        return z.back();
    // g is decreasing: find first index with g[i] <= p
    auto it = std::lower_bound(g.begin(), g.end(), p, std::greater<double>());
    const auto i = static_cast<std::size_t>(it - g.begin());
    if (g[i] == p)
        return z[i];
    const double t = (p - g[i - 1]) / (g[i] - g[i - 1]);
    return z[i - 1] + t * (z[i] - z[i - 1]);
}

} // namespace scop
