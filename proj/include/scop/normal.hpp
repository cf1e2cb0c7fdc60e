#ifndef SCOP_NORMAL_HPP
#define SCOP_NORMAL_HPP

// Standard normal kernels used throughout the model: density, CDF,
// survival (upper tail), log survival stable far into the tail, the
// AS241 quantile, and the hazard phi/Phibar.

namespace scop {

inline constexpr double kLogInvSqrt2Pi = -0.9189385332046727;

// log phi(z)
double norm_log_pdf(double z);

// Phi(z) = P(Z <= z)
double norm_cdf(double z);

// Phibar(z) = P(Z >= z)
double norm_sf(double z);

// log Phibar(z). Does not underflow to -inf before the true tail does;
// usable for |z| well beyond 38.
double norm_log_sf(double z);

// Phi^{-1}(p), p in (0,1). Wichura's AS241 (PPND16), ~1 ulp.
double norm_quantile(double p);

// phi(z) / Phibar(z)
double norm_hazard(double z);

} // namespace scop

#endif
