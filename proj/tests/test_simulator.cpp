#include <doctest.h>

#include "scop/normal.hpp"
#include "scop/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

using namespace scop;

namespace {
constexpr double kNoiseRetention = 0.049471468033648095; // Phi(-1.65)
}

TEST_CASE("presets carry the published designs") {
    const auto c1 = preset("case1");
    CHECK(c1.n == 10000);
    CHECK(c1.pi == std::array<double, 4>{0.9, 0.0, 0.0, 0.1});
    CHECK(c1.mu1 == -5.0);
    CHECK(c1.var1 == 1.0);
    CHECK(c1.k1 == -1.65);

    const auto c2 = preset("case2");
    CHECK(c2.pi == std::array<double, 4>{0.1, 0.0, 0.0, 0.9});
    CHECK(c2.mu2 == -5.0);

    const auto c3 = preset("case3");
    CHECK(c3.n == 10000);
    CHECK(c3.pi == std::array<double, 4>{0.3, 0.5, 0.0, 0.2});
    CHECK(c3.mu1 == -3.0);
    CHECK(c3.var1 == 1.0);

    CHECK_THROWS_AS(preset("case9"), std::invalid_argument);
}

TEST_CASE("simulation is bitwise deterministic") {
    SimConfig cfg = preset("case1");
    cfg.n = 2000;
    cfg.seed = 99;
    const auto a = simulate(cfg);
    const auto b = simulate(cfg);
    REQUIRE(a.n_retained == b.n_retained);
    CHECK(a.labels == b.labels);
    for (int i = 0; i < a.dataset.size(); ++i) {
        CHECK(a.dataset.records[i].locus_id == b.dataset.records[i].locus_id);
        CHECK(a.dataset.records[i].x1 == b.dataset.records[i].x1);
        CHECK(a.dataset.records[i].x2 == b.dataset.records[i].x2);
        CHECK(a.dataset.records[i].delta1 == b.dataset.records[i].delta1);
    }
}

TEST_CASE("scores sit on the p-value scale below the cutoff") {
    SimConfig cfg = preset("case1");
    cfg.n = 3000;
    cfg.seed = 5;
    const auto out = simulate(cfg);
    CHECK(out.dataset.cutoff1 == doctest::Approx(kNoiseRetention).epsilon(1e-12));
    for (const auto& r : out.dataset.records) {
        CHECK(r.x1 <= out.dataset.cutoff1);
        CHECK(r.x1 > 0.0);
        if (!r.delta1)
            CHECK(r.x1 == out.dataset.cutoff1);
        CHECK(r.delta1 + r.delta2 >= 1); // doubly-censored loci never materialize
    }
}

TEST_CASE("pure-noise retention matches the binomial expectation") {
    SimConfig cfg;
    cfg.n = 10000;
    cfg.pi = {1.0, 0.0, 0.0, 0.0};
    cfg.mu1 = cfg.mu2 = -5.0;
    cfg.var1 = cfg.var2 = 1.0;
    cfg.k1 = cfg.k2 = -1.65;
    cfg.seed = 11;
    const auto out = simulate(cfg);

    const double p = kNoiseRetention;
    const double n = cfg.n;

    const double exp_list = n * p;
    const double sd_list = std::sqrt(n * p * (1.0 - p));
    const double obs_list1 = out.dataset.n_both + out.dataset.n_only1;
    const double obs_list2 = out.dataset.n_both + out.dataset.n_only2;
    CHECK(std::fabs(obs_list1 - exp_list) <= 4.0 * sd_list);
    CHECK(std::fabs(obs_list2 - exp_list) <= 4.0 * sd_list);

    const double p_both = p * p;
    const double sd_both = std::sqrt(n * p_both * (1.0 - p_both));
    CHECK(std::fabs(out.dataset.n_both - n * p_both) <= 4.0 * sd_both);

    const double p_union = 2.0 * p - p * p;
    const double sd_union = std::sqrt(n * p_union * (1.0 - p_union));
    CHECK(std::fabs(out.n_retained - n * p_union) <= 4.0 * sd_union);
}

TEST_CASE("extreme signal far below the cutoff is always retained") {
    SimConfig cfg;
    cfg.n = 500;
    cfg.pi = {0.0, 0.0, 0.0, 1.0};
    cfg.mu1 = cfg.mu2 = -50.0;
    cfg.var1 = cfg.var2 = 0.01;
    cfg.k1 = cfg.k2 = -1.65;
    cfg.seed = 3;
    const auto out = simulate(cfg);
    CHECK(out.n_retained == cfg.n);
    for (const auto& r : out.dataset.records) {
        CHECK(r.delta1 == 1);
        CHECK(r.delta2 == 1);
    }
}

TEST_CASE("case presets hit the published venn counts") {
    SimConfig c1 = preset("case1");
    c1.seed = 1;
    const auto v1 = venn_summary(simulate(c1).dataset);
    // expected union ~1868, both-share ~0.546 under the design
    CHECK(std::fabs(static_cast<double>(v1.n_union) - 1868.5) <= 4.0 * 29.0);
    CHECK(std::fabs(v1.fraction_shared - 0.5465) <= 0.04);

    SimConfig c2 = preset("case2");
    c2.seed = 1;
    const auto v2 = venn_summary(simulate(c2).dataset);
    CHECK(std::fabs(static_cast<double>(v2.n_union) - 1091.6) <= 4.0 * 10.0);
}

TEST_CASE("observed signal coordinates follow the truncated law") {
    // all-signal design: every reported z is a draw from N(-5,1) given z <= K
    SimConfig cfg;
    cfg.n = 5000;
    cfg.pi = {0.0, 0.0, 0.0, 1.0};
    cfg.mu1 = cfg.mu2 = -5.0;
    cfg.var1 = cfg.var2 = 1.0;
    cfg.k1 = cfg.k2 = -1.65;
    cfg.seed = 21;
    const auto out = simulate(cfg);

    std::vector<double> z;
    for (const auto& r : out.dataset.records)
        if (r.delta1)
            z.push_back(norm_quantile(r.x1)); // invert the p-value transform
    std::sort(z.begin(), z.end());

    const double denom = norm_cdf((cfg.k1 - cfg.mu1) / std::sqrt(cfg.var1));
    double d_stat = 0.0;
    const auto m = static_cast<double>(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        const double f = norm_cdf((z[i] - cfg.mu1) / std::sqrt(cfg.var1)) / denom;
        d_stat = std::max(d_stat, std::fabs((i + 1) / m - f));
        d_stat = std::max(d_stat, std::fabs(i / m - f));
    }
    // Kolmogorov-Smirnov at alpha = 0.01
    CHECK(d_stat < 1.62762 / std::sqrt(m));
}

TEST_CASE("rank list extraction matches the deltas") {
    SimConfig cfg = preset("case1");
    cfg.n = 1500;
    cfg.seed = 8;
    const auto out = simulate(cfg);
    const auto l1 = rank_list_of(out, 1);
    const auto l2 = rank_list_of(out, 2);
    CHECK(static_cast<int>(l1.entries.size()) == out.dataset.n_both + out.dataset.n_only1);
    CHECK(static_cast<int>(l2.entries.size()) == out.dataset.n_both + out.dataset.n_only2);
    CHECK(l1.cutoff == out.dataset.cutoff1);
    for (const auto& e : l1.entries)
        CHECK(e.score <= l1.cutoff);
}
