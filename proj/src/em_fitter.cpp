#include "scop/em_fitter.hpp"

#include "scop/normal.hpp"
#include "scop/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace scop {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp4(const std::array<double, 4>& v) {
    const double m = std::max(std::max(v[0], v[1]), std::max(v[2], v[3]));
    if (m == kNegInf)
        return kNegInf;
    double s = 0.0;
    for (double x : v)
        s += std::exp(x - m);
    return m + std::log(s);
}

// delta ln g + (1-delta) ln G for one margin, both components at once
void margin_terms(double z, int delta, double mu, double var, double& noise_term,
                  double& signal_term) {
    if (delta) {
        noise_term = norm_log_pdf(z);
        signal_term = component_log_density(z, Component::signal, mu, var);
    } else {
        noise_term = norm_log_sf(z);
        signal_term = component_log_survival(z, Component::signal, mu, var);
    }
}

std::array<double, 4> log_h_terms(const PseudoData& p, std::size_t i,
                                  const ModelParams& params) {
    double a10, a11, a20, a21;
    margin_terms(p.z1[i], p.delta1[i], params.mu1, params.var1, a10, a11);
    margin_terms(p.z2[i], p.delta2[i], params.mu2, params.var2, a20, a21);
    return {a10 + a20, a11 + a20, a10 + a21, a11 + a21};
}

std::array<double, 4> log_pi(const ModelParams& params) {
    std::array<double, 4> lp{};
    for (int k = 0; k < 4; ++k)
        lp[k] = params.pi[k] > 0.0 ? std::log(params.pi[k]) : kNegInf;
    return lp;
}

} // namespace

PseudoData compute_pseudo_data(const BivariateDataset& dataset, const MarginalSurvival& s1,
                               const MarginalSurvival& s2, const ModelParams& params,
                               int grid_points) {
    const LatentGrid g1 = build_grid(params, 1, grid_points);
    const LatentGrid g2 = build_grid(params, 2, grid_points);

    PseudoData p;
    const std::size_t n = dataset.records.size();
    // Plotting-position rescale: the left-continuous KM estimate is exactly 1
    // at the top-ranked score, whose latent image would otherwise sit at the
    // (parameter-dependent) grid boundary and feed back into the outer
    // iteration. n/(n+1) keeps every survival level interior.
    const double scale = static_cast<double>(n) / (static_cast<double>(n) + 1.0);
    p.z1.resize(n);
    p.z2.resize(n);
    p.delta1.resize(n);
    p.delta2.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = dataset.records[i];
        p.z1[i] = inverse_G(scale * s1.evaluate(r.x1), g1);
        p.z2[i] = inverse_G(scale * s2.evaluate(r.x2), g2);
        p.delta1[i] = r.delta1;
        p.delta2[i] = r.delta2;
    }
    p.k1 = inverse_G(scale * s1.evaluate(dataset.cutoff1), g1);
    p.k2 = inverse_G(scale * s2.evaluate(dataset.cutoff2), g2);
    return p;
}

double log_likelihood(const PseudoData& pseudo, const ModelParams& params) {
    const auto lp = log_pi(params);
    double total = 0.0;
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
        auto lh = log_h_terms(pseudo, i, params);
        for (int k = 0; k < 4; ++k)
            lh[k] += lp[k];
        total += log_sum_exp4(lh);
    }
    return total;
}

double dependence_loglik(const PseudoData& pseudo, const ModelParams& params) {
    const auto lp = log_pi(params);
    const double wn1 = params.pi[0] + params.pi[2], ws1 = params.pi[1] + params.pi[3];
    const double wn2 = params.pi[0] + params.pi[1], ws2 = params.pi[2] + params.pi[3];
    double total = 0.0;
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
        double a10, a11, a20, a21;
        margin_terms(pseudo.z1[i], pseudo.delta1[i], params.mu1, params.var1, a10, a11);
        margin_terms(pseudo.z2[i], pseudo.delta2[i], params.mu2, params.var2, a20, a21);
        std::array<double, 4> lh{a10 + a20, a11 + a20, a10 + a21, a11 + a21};
        for (int k = 0; k < 4; ++k)
            lh[k] += lp[k];
        // marginal mixture terms (log-sum-exp of two components)
        const auto mix2 = [](double wn, double an, double ws, double as) {
            const double m = std::max(an, as);
            if (m == kNegInf)
                return kNegInf;
            return m + std::log(wn * std::exp(an - m) + ws * std::exp(as - m));
        };
        total += log_sum_exp4(lh) - mix2(wn1, a10, ws1, a11) - mix2(wn2, a20, ws2, a21);
    }
    return total;
}

PosteriorMatrix e_step(const PseudoData& pseudo, const ModelParams& params) {
    const auto lp = log_pi(params);
    PosteriorMatrix post(pseudo.size());
    for (std::size_t i = 0; i < pseudo.size(); ++i) {
        auto lh = log_h_terms(pseudo, i, params);
        for (int k = 0; k < 4; ++k)
            lh[k] += lp[k];
        const double m = std::max(std::max(lh[0], lh[1]), std::max(lh[2], lh[3]));
        if (m == kNegInf)
            throw std::runtime_error("e_step: all joint terms vanished at record #" +
                                     std::to_string(i));
        double s = 0.0;
        for (int k = 0; k < 4; ++k) {
            post[i][k] = std::exp(lh[k] - m);
            s += post[i][k];
        }
        for (int k = 0; k < 4; ++k)
            post[i][k] /= s;
    }
    return post;
}

std::array<double, 4> m_step_pi(const PosteriorMatrix& posteriors) {
    std::array<double, 4> pi{0.0, 0.0, 0.0, 0.0};
    for (const auto& row : posteriors)
        for (int k = 0; k < 4; ++k)
            pi[k] += row[k];
    const double n = static_cast<double>(posteriors.size());
    for (int k = 0; k < 4; ++k)
        pi[k] /= n;
    return pi;
}

// ---------------------------------------------------------------------------
// Weighted censored-Gaussian M-step
// ---------------------------------------------------------------------------

namespace {

struct CensoredStats {
    double sw = 0.0, swz = 0.0, swzz = 0.0; // uncensored weighted moments
    std::vector<std::pair<double, double>> censored; // (z, weight)
    double total_weight = 0.0;
};

CensoredStats collect_stats(std::span<const double> z, std::span<const int> deltas,
                            std::span<const double> weights) {
    CensoredStats s;
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double w = weights[i];
        s.total_weight += w;
        if (w <= 0.0)
            continue;
        if (deltas[i]) {
            s.sw += w;
            s.swz += w * z[i];
            s.swzz += w * z[i] * z[i];
        } else {
            s.censored.emplace_back(z[i], w);
        }
    }
    return s;
}

double objective(const CensoredStats& s, double mu, double sigma) {
    const double q = s.swzz - 2.0 * mu * s.swz + mu * mu * s.sw;
    double v = s.sw * (kLogInvSqrt2Pi - std::log(sigma)) - 0.5 * q / (sigma * sigma);
    for (const auto& [zc, wc] : s.censored)
        v += wc * norm_log_sf((zc - mu) / sigma);
    return v;
}

void gradient(const CensoredStats& s, double mu, double sigma, double& gmu, double& gsig) {
    const double q = s.swzz - 2.0 * mu * s.swz + mu * mu * s.sw;
    gmu = (s.swz - mu * s.sw) / (sigma * sigma);
    gsig = -s.sw / sigma + q / (sigma * sigma * sigma);
    for (const auto& [zc, wc] : s.censored) {
        const double u = (zc - mu) / sigma;
        const double lambda = norm_hazard(u); // inverse Mills ratio
        gmu += wc * lambda / sigma;
        gsig += wc * lambda * u / sigma;
    }
}

struct Vec2 {
    double mu, sigma;
};

Vec2 clamp_box(Vec2 x) {
    return {std::clamp(x.mu, kMuLo, kMuHi), std::clamp(x.sigma, kSigmaLo, kSigmaHi)};
}

// Projected BFGS ascent on the box; good enough for a smooth 2-D objective.
Vec2 boxed_quasi_newton(const CensoredStats& s, Vec2 x0) {
    Vec2 x = clamp_box(x0);
    double fx = objective(s, x.mu, x.sigma);
    // inverse Hessian approximation (of the negated objective)
    double h11 = 1.0, h12 = 0.0, h22 = 1.0;
    double gmu, gsig;
    gradient(s, x.mu, x.sigma, gmu, gsig);

    for (int iter = 0; iter < 200; ++iter) {
        // projected gradient: drop components pushing outside an active bound
        double pgm = gmu, pgs = gsig;
        if ((x.mu <= kMuLo && pgm < 0.0) || (x.mu >= kMuHi && pgm > 0.0))
            pgm = 0.0;
        if ((x.sigma <= kSigmaLo && pgs < 0.0) || (x.sigma >= kSigmaHi && pgs > 0.0))
            pgs = 0.0;
        if (std::max(std::fabs(pgm), std::fabs(pgs)) < 1e-10 * (1.0 + std::fabs(fx)))
            break;

        double dm = h11 * gmu + h12 * gsig;
        double ds = h12 * gmu + h22 * gsig;
        if (dm * gmu + ds * gsig <= 0.0) { // not an ascent direction: reset
            dm = gmu;
            ds = gsig;
            h11 = h22 = 1.0;
            h12 = 0.0;
        }

        double t = 1.0;
        Vec2 xn = x;
        double fn = fx;
        bool accepted = false;
        for (int ls = 0; ls < 50; ++ls) {
            xn = clamp_box({x.mu + t * dm, x.sigma + t * ds});
            fn = objective(s, xn.mu, xn.sigma);
            const double pred = gmu * (xn.mu - x.mu) + gsig * (xn.sigma - x.sigma);
            if (std::isfinite(fn) && fn >= fx + 1e-4 * pred && pred > 0.0) {
                accepted = true;
                break;
            }
            t *= 0.5;
        }
        if (!accepted)
            break;

        double gmu_n, gsig_n;
        gradient(s, xn.mu, xn.sigma, gmu_n, gsig_n);
        const double sm = xn.mu - x.mu, ss = xn.sigma - x.sigma;
        const double ym = -(gmu_n - gmu), ys = -(gsig_n - gsig); // y of negated objective
        const double sy = sm * ym + ss * ys;
        const bool at_bound = xn.mu <= kMuLo || xn.mu >= kMuHi || xn.sigma <= kSigmaLo ||
                              xn.sigma >= kSigmaHi;
        if (at_bound || sy <= 1e-12) {
            h11 = h22 = 1.0;
            h12 = 0.0;
        } else {
            // BFGS inverse update, 2x2 written out
            const double rho = 1.0 / sy;
            const double hy1 = h11 * ym + h12 * ys;
            const double hy2 = h12 * ym + h22 * ys;
            const double yhy = ym * hy1 + ys * hy2;
            h11 += rho * rho * yhy * sm * sm - 2.0 * rho * sm * hy1 + rho * sm * sm;
            h12 += rho * rho * yhy * sm * ss - rho * (sm * hy2 + ss * hy1) + rho * sm * ss;
            h22 += rho * rho * yhy * ss * ss - 2.0 * rho * ss * hy2 + rho * ss * ss;
        }
        x = xn;
        fx = fn;
        gmu = gmu_n;
        gsig = gsig_n;
        if (std::fabs(sm) + std::fabs(ss) < 1e-13)
            break;
    }
    return x;
}

Vec2 grid_fallback(const CensoredStats& s, Vec2 center) {
    // coarse sweep of the whole box, then shrink around the best point
    Vec2 best = clamp_box(center);
    double fbest = objective(s, best.mu, best.sigma);
    double mu_lo = kMuLo, mu_hi = kMuHi, sg_lo = kSigmaLo, sg_hi = kSigmaHi;
    for (int round = 0; round < 4; ++round) {
        const int steps = 60;
        for (int i = 0; i <= steps; ++i) {
            const double mu = mu_lo + (mu_hi - mu_lo) * i / steps;
            for (int j = 0; j <= steps; ++j) {
                const double sg = sg_lo + (sg_hi - sg_lo) * j / steps;
                const double f = objective(s, mu, sg);
                if (std::isfinite(f) && f > fbest) {
                    fbest = f;
                    best = {mu, sg};
                }
            }
        }
        const double mu_span = (mu_hi - mu_lo) / steps * 2.0;
        const double sg_span = (sg_hi - sg_lo) / steps * 2.0;
        mu_lo = std::max(kMuLo, best.mu - mu_span);
        mu_hi = std::min(kMuHi, best.mu + mu_span);
        sg_lo = std::max(kSigmaLo, best.sigma - sg_span);
        sg_hi = std::min(kSigmaHi, best.sigma + sg_span);
    }
    return best;
}

} // namespace

void censored_gaussian_objective(std::span<const double> z, std::span<const int> deltas,
                                 std::span<const double> weights, double mu, double sigma,
                                 double* value, double* grad_mu, double* grad_sigma) {
    const CensoredStats s = collect_stats(z, deltas, weights);
    if (value)
        *value = objective(s, mu, sigma);
    if (grad_mu || grad_sigma) {
        double gm, gs;
        gradient(s, mu, sigma, gm, gs);
        if (grad_mu)
            *grad_mu = gm;
        if (grad_sigma)
            *grad_sigma = gs;
    }
}

SignalFit m_step_signal(std::span<const double> z, std::span<const int> deltas,
                        std::span<const double> weights, double prev_mu, double prev_var) {
    if (z.size() != deltas.size() || z.size() != weights.size())
        throw std::invalid_argument("m_step_signal: length mismatch");
    const CensoredStats s = collect_stats(z, deltas, weights);
    if (s.total_weight < 1e-8)
        return {prev_mu, prev_var, false};

    // start from the uncensored weighted MLE, which is exact when nothing
    // is censored, projected into the box
    Vec2 start;
    if (s.sw > 0.0) {
        const double mean = s.swz / s.sw;
        const double var = std::max(s.swzz / s.sw - mean * mean, 0.0);
        start = clamp_box({mean, std::sqrt(var)});
    } else {
        start = clamp_box({prev_mu, std::sqrt(prev_var)});
    }
    const Vec2 prev = clamp_box({prev_mu, std::sqrt(prev_var)});

    Vec2 cand = boxed_quasi_newton(s, start);
    double fcand = objective(s, cand.mu, cand.sigma);
    const double fstart = objective(s, start.mu, start.sigma);
    const double fprev = objective(s, prev.mu, prev.sigma);
    if (!std::isfinite(fcand) || fcand < fstart || fcand < fprev) {
        const Vec2 g = grid_fallback(s, cand);
        const Vec2 refined = boxed_quasi_newton(s, g);
        const double fg = objective(s, g.mu, g.sigma);
        const double fr = objective(s, refined.mu, refined.sigma);
        if (std::isfinite(fr) && fr >= fg && fr > fcand) {
            cand = refined;
            fcand = fr;
        } else if (std::isfinite(fg) && fg > fcand) {
            cand = g;
            fcand = fg;
        }
    }
    // generalized-EM safeguard: never move downhill relative to the old point
    if (!(fcand >= fprev))
        return {prev.mu, prev.sigma * prev.sigma, false};
    if (fcand < fstart)
        return {start.mu, start.sigma * start.sigma, true};
    return {cand.mu, cand.sigma * cand.sigma, true};
}

// ---------------------------------------------------------------------------
// EM loops
// ---------------------------------------------------------------------------

InnerEmResult inner_em(const PseudoData& pseudo, ModelParams params, double tol,
                       int max_iters) {
    validate(params);
    InnerEmResult res;
    PosteriorMatrix post = e_step(pseudo, params);
    double ll = log_likelihood(pseudo, params);
    res.loglik_trace.push_back(ll);

    const std::size_t n = pseudo.size();
    std::vector<double> w1(n), w2(n);
    for (int iter = 0; iter < max_iters; ++iter) {
        params.pi = m_step_pi(post);
        for (std::size_t i = 0; i < n; ++i) {
            w1[i] = post[i][1] + post[i][3];
            w2[i] = post[i][2] + post[i][3];
        }
        const SignalFit f1 = m_step_signal(pseudo.z1, pseudo.delta1, w1, params.mu1, params.var1);
        params.mu1 = f1.mu;
        params.var1 = f1.var;
        const SignalFit f2 = m_step_signal(pseudo.z2, pseudo.delta2, w2, params.mu2, params.var2);
        params.mu2 = f2.mu;
        params.var2 = f2.var;

        post = e_step(pseudo, params);
        const double ll_new = log_likelihood(pseudo, params);
        res.loglik_trace.push_back(ll_new);
        const bool done = std::fabs(ll_new - ll) < tol;
        ll = ll_new;
        if (done)
            break;
    }
    res.params = params;
    res.posteriors = std::move(post);
    return res;
}

namespace {

std::pair<MarginalSurvival, MarginalSurvival> km_margins(const BivariateDataset& ds,
                                                         double floor_scale) {
    const std::size_t n = ds.records.size();
    std::vector<double> t1(n), t2(n);
    std::vector<int> d1(n), d2(n);
    for (std::size_t i = 0; i < n; ++i) {
        t1[i] = ds.records[i].x1;
        t2[i] = ds.records[i].x2;
        d1[i] = ds.records[i].delta1;
        d2[i] = ds.records[i].delta2;
    }
    return {kaplan_meier(t1, d1, ds.cutoff1, floor_scale),
            kaplan_meier(t2, d2, ds.cutoff2, floor_scale)};
}

FitResult fit_one_start(const BivariateDataset& ds, const MarginalSurvival& s1,
                        const MarginalSurvival& s2, ModelParams theta,
                        const FitConfig& cfg) {
    FitResult res;
    PseudoData pseudo = compute_pseudo_data(ds, s1, s2, theta, cfg.grid_points);
    // Convergence of the outer refresh loop is monitored on the dependence
    // log-likelihood: the raw one is not comparable across refreshes because
    // the pseudo-data margins move with the parameters.
    double prev_dep = -std::numeric_limits<double>::infinity();
    for (int outer = 1; outer <= cfg.max_outer; ++outer) {
        InnerEmResult inner = inner_em(pseudo, theta, cfg.inner_tol, cfg.max_inner);
        theta = inner.params;
        for (std::size_t t = 0; t < inner.loglik_trace.size(); ++t)
            res.trace.push_back({outer, static_cast<int>(t), inner.loglik_trace[t]});

        pseudo = compute_pseudo_data(ds, s1, s2, theta, cfg.grid_points);
        const double dep = dependence_loglik(pseudo, theta);
        res.outer_logliks.push_back(log_likelihood(pseudo, theta));
        res.n_outer_iters = outer;
        if (std::fabs(dep - prev_dep) < cfg.outer_tol) {
            res.converged = true;
            break;
        }
        prev_dep = dep;
    }
    res.params = theta;
    res.pseudo = std::move(pseudo);
    res.posteriors = e_step(res.pseudo, theta);
    res.loglik = res.outer_logliks.back();
    res.dependence = dependence_loglik(res.pseudo, theta);
    return res;
}

// The probes only rank basins, so they can run on a strided subsample of a
// large dataset; the refinements always see the full data.
BivariateDataset probe_subsample(const BivariateDataset& ds, int cap) {
    if (ds.size() <= cap)
        return ds;
    BivariateDataset out;
    out.cutoff1 = ds.cutoff1;
    out.cutoff2 = ds.cutoff2;
    const std::size_t n = ds.records.size();
    const std::size_t stride = (n + cap - 1) / cap;
    for (std::size_t i = 0; i < n; i += stride) {
        const auto& r = ds.records[i];
        out.records.push_back(r);
        if (r.delta1 && r.delta2)
            ++out.n_both;
        else if (r.delta1)
            ++out.n_only1;
        else
            ++out.n_only2;
    }
    return out;
}

// One leashed run of the nested iteration from a candidate start: two
// pseudo-data refreshes with bounded inner EMs, scored on the dependence
// log-likelihood. Long enough to shed spurious components, short enough to
// stay in the start's basin.
std::pair<ModelParams, double> short_probe(const BivariateDataset& ds,
                                           const MarginalSurvival& s1,
                                           const MarginalSurvival& s2, ModelParams theta,
                                           const FitConfig& cfg) {
    for (int round = 0; round < 2; ++round) {
        const PseudoData pseudo = compute_pseudo_data(ds, s1, s2, theta, cfg.grid_points);
        theta = inner_em(pseudo, theta, cfg.inner_tol, 30).params;
    }
    const PseudoData pseudo = compute_pseudo_data(ds, s1, s2, theta, cfg.grid_points);
    return {theta, dependence_loglik(pseudo, theta)};
}

// Candidate starting points: a ladder of signal depths crossed with mixture
// archetypes, then asymmetric mean offsets around the best rung. The refresh
// iteration is only locally stable and the data pin the margins to whatever
// mixture is assumed, so the probes must cover these shapes explicitly; the
// best few are all worth refining. Exact zeros matter: EM keeps them at
// zero, so the two-component and one-sided archetypes probe the sub-models
// directly and never accumulate spurious components.
std::vector<ModelParams> search_init(const BivariateDataset& full_ds,
                                     const FitConfig& cfg, int keep) {
    static constexpr std::array<std::array<double, 4>, 7> kPiArchetypes{{
        {0.7, 0.1, 0.1, 0.1},     // full support, noise-heavy
        {0.1, 0.05, 0.05, 0.8},   // full support, concordant-heavy
        {0.9, 0.0, 0.0, 0.1},     // shared-signal sub-models
        {0.5, 0.0, 0.0, 0.5},
        {0.05, 0.0, 0.0, 0.95},
        {0.3, 0.55, 0.0, 0.15},   // one-sided sub-models
        {0.3, 0.0, 0.55, 0.15},
    }};

    const BivariateDataset ds = probe_subsample(full_ds, 2500);
    const auto [s1, s2] = km_margins(ds, cfg.km_floor_scale);

    std::vector<std::pair<double, ModelParams>> scored;
    std::vector<std::pair<double, ModelParams>> arch_best(
        kPiArchetypes.size(),
        {-std::numeric_limits<double>::infinity(), cfg.init});
    double best_dep = -std::numeric_limits<double>::infinity();
    ModelParams best_seed = cfg.init;
    for (double mu : {-1.0, -2.0, -3.0, -4.0, -5.0, -6.0}) {
        for (std::size_t a = 0; a < kPiArchetypes.size(); ++a) {
            ModelParams theta;
            theta.pi = kPiArchetypes[a];
            theta.mu1 = theta.mu2 = mu;
            theta.var1 = theta.var2 = 1.0;
            const auto [adapted, dep] = short_probe(ds, s1, s2, theta, cfg);
            scored.emplace_back(dep, adapted);
            if (dep > arch_best[a].first)
                arch_best[a] = {dep, adapted};
            if (dep > best_dep) {
                best_dep = dep;
                best_seed = theta;
            }
        }
    }
    for (double off1 : {-1.0, 0.0, 1.0}) {
        for (double off2 : {-1.0, 0.0, 1.0}) {
            if (off1 == 0.0 && off2 == 0.0)
                continue;
            ModelParams theta = best_seed;
            theta.mu1 = std::clamp(best_seed.mu1 + off1, kMuLo, kMuHi);
            theta.mu2 = std::clamp(best_seed.mu2 + off2, kMuLo, kMuHi);
            const auto [adapted, dep] = short_probe(ds, s1, s2, theta, cfg);
            scored.emplace_back(dep, adapted);
        }
    }
    std::sort(scored.begin(), scored.end(),
              [](const auto& a, const auto& b) { return a.first > b.first; });

    // top-k overall plus each archetype's champion: asymmetric designs often
    // rank low after a short probe but win after full refinement.
    std::vector<ModelParams> out;
    for (int i = 0; i < keep && i < static_cast<int>(scored.size()); ++i)
        out.push_back(scored[i].second);
    for (const auto& [dep, theta] : arch_best) {
        if (dep == -std::numeric_limits<double>::infinity())
            continue;
        bool dup = false;
        for (const auto& existing : out)
            dup = dup || (existing.mu1 == theta.mu1 && existing.mu2 == theta.mu2 &&
                          existing.var1 == theta.var1 && existing.pi == theta.pi);
        if (!dup)
            out.push_back(theta);
    }
    return out;
}

ModelParams random_start(std::uint64_t seed, int index) {
    StreamRng rng(seed, 0x5C0Full + static_cast<std::uint64_t>(index));
    ModelParams p;
    double sum = 0.0;
    for (int k = 0; k < 4; ++k) {
        p.pi[k] = -std::log(rng.next_unit()); // flat Dirichlet via Exp(1)
        sum += p.pi[k];
    }
    for (int k = 0; k < 4; ++k)
        p.pi[k] /= sum;
    p.mu1 = -6.0 + 5.5 * rng.next_unit();
    p.mu2 = -6.0 + 5.5 * rng.next_unit();
    const double sd1 = 0.5 + 1.5 * rng.next_unit();
    const double sd2 = 0.5 + 1.5 * rng.next_unit();
    p.var1 = sd1 * sd1;
    p.var2 = sd2 * sd2;
    return p;
}

} // namespace

FitResult fit(const BivariateDataset& dataset, const FitConfig& config) {
    if (dataset.records.empty())
        throw std::invalid_argument("fit: empty dataset");
    const auto [s1, s2] = km_margins(dataset, config.km_floor_scale);

    std::vector<ModelParams> starts;
    if (config.init_search)
        starts = search_init(dataset, config, 3);
    else
        starts.push_back(config.init);
    for (int s = 1; s < config.multistart; ++s)
        starts.push_back(random_start(config.seed, s));

    FitResult best;
    bool have = false;
    for (const ModelParams& theta0 : starts) {
        FitResult r = fit_one_start(dataset, s1, s2, theta0, config);
        // The refresh iteration can wander off a stationary start; never
        // return a point that scores worse than where it began.
        PseudoData p0 = compute_pseudo_data(dataset, s1, s2, theta0, config.grid_points);
        const double dep0 = dependence_loglik(p0, theta0);
        if (dep0 > r.dependence) {
            r.params = theta0;
            r.posteriors = e_step(p0, theta0);
            r.loglik = log_likelihood(p0, theta0);
            r.dependence = dep0;
            r.pseudo = std::move(p0);
            r.converged = true; // kept the stationary start
        }
        if (!have || r.dependence > best.dependence) {
            best = std::move(r);
            have = true;
        }
    }
    return best;
}

FitResult fit_complete_case(const BivariateDataset& dataset, const FitConfig& config) {
    const BivariateDataset cc = complete_cases(dataset);
    if (cc.size() < config.min_complete_cases)
        throw std::invalid_argument("fit_complete_case: only " + std::to_string(cc.size()) +
                                    " complete cases, need at least " +
                                    std::to_string(config.min_complete_cases));
    return fit(cc, config);
}

} // namespace scop
