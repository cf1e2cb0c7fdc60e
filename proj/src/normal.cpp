#include "scop/normal.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace scop {

namespace {
const double kSqrt2 = std::sqrt(2.0);
}

double norm_log_pdf(double z) {
    return kLogInvSqrt2Pi - 0.5 * z * z;
}

double norm_cdf(double z) {
    return 0.5 * std::erfc(-z / kSqrt2);
}

double norm_sf(double z) {
    return 0.5 * std::erfc(z / kSqrt2);
}

double norm_log_sf(double z) {
    if (z <= 0.0) {
        // Phibar(z) = 1 - Phibar(-z); the subtrahend is <= 0.5 so log1p is accurate
        // and stays finite even when Phibar(-z) underflows.
        return std::log1p(-norm_sf(-z));
    }
    if (z < 35.0) {
        // erfc keeps full precision down to ~1e-265 here.
        return std::log(0.5 * std::erfc(z / kSqrt2));
    }
    // Asymptotic expansion: Phibar(z) = phi(z)/z * (1 - 1/z^2 + 3/z^4 - 15/z^6 + 105/z^8 - ...)
    const double zi2 = 1.0 / (z * z);
    const double series = zi2 * (-1.0 + zi2 * (3.0 + zi2 * (-15.0 + zi2 * 105.0)));
    return norm_log_pdf(z) - std::log(z) + std::log1p(series);
}

double norm_hazard(double z) {
    return std::exp(norm_log_pdf(z) - norm_log_sf(z));
}

// AS241 (Wichura 1988), PPND16 coefficients.
double norm_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("norm_quantile: p must be in (0,1)");

    const double q = p - 0.5;
    double r;
    if (std::fabs(q) <= 0.425) {
        r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    r = (q < 0.0) ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return (q < 0.0) ? -z : z;
}

} // namespace scop
