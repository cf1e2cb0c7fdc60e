#include <doctest.h>

#include "scop/normal.hpp"

#include <cmath>
#include <initializer_list>

using namespace scop;

namespace {
// mpmath, 40 digits
constexpr double kLogSf10 = -53.23128515051247;   // log Phibar(10)
constexpr double kLogSf38 = -726.5572160188201;   // log Phibar(38)
constexpr double kSf10 = 7.619853024160526e-24;
} // namespace

TEST_CASE("normal density basics") {
    CHECK(norm_log_pdf(0.0) == doctest::Approx(-0.9189385332046727).epsilon(1e-15));
    CHECK(norm_log_pdf(2.0) == doctest::Approx(-0.9189385332046727 - 2.0).epsilon(1e-15));
}

TEST_CASE("log survival matches high-precision tail values") {
    CHECK(norm_log_sf(0.0) == doctest::Approx(std::log(0.5)).epsilon(1e-15));
    CHECK(std::fabs(norm_log_sf(10.0) - kLogSf10) / std::fabs(kLogSf10) < 1e-12);
    CHECK(std::fabs(norm_log_sf(38.0) - kLogSf38) / std::fabs(kLogSf38) < 1e-12);
    CHECK(norm_sf(10.0) == doctest::Approx(kSf10).epsilon(1e-13));
}

TEST_CASE("log survival stays finite far beyond erfc underflow") {
    CHECK(std::isfinite(norm_log_sf(40.0)));
    CHECK(std::isfinite(norm_log_sf(300.0)));
    CHECK(std::isfinite(norm_log_sf(1e4)));
    CHECK(norm_log_sf(40.0) > norm_log_sf(41.0));
}

TEST_CASE("survival symmetry Phibar(z) + Phibar(-z) = 1") {
    for (double z : {0.0, 0.3, 1.0, 2.5, 5.0, 8.0}) {
        const double s = std::exp(norm_log_sf(z)) + std::exp(norm_log_sf(-z));
        CHECK(std::fabs(s - 1.0) < 1e-12);
    }
}

TEST_CASE("log survival is decreasing") {
    double prev = norm_log_sf(-30.0);
    for (double z = -29.0; z <= 39.0; z += 0.5) {
        const double v = norm_log_sf(z);
        CHECK(v < prev);
        prev = v;
    }
}

TEST_CASE("quantile inverts the CDF") {
    CHECK(norm_quantile(0.5) == doctest::Approx(0.0).epsilon(1e-15));
    for (double p : {1e-12, 1e-6, 0.01, 0.2, 0.5, 0.8, 0.99, 1.0 - 1e-6}) {
        CHECK(norm_cdf(norm_quantile(p)) == doctest::Approx(p).epsilon(1e-12));
    }
    CHECK_THROWS(norm_quantile(0.0));
    CHECK_THROWS(norm_quantile(1.0));
}
