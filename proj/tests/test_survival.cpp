#include <doctest.h>

#include "scop/rng.hpp"
#include "scop/survival.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

using namespace scop;

TEST_CASE("product-limit hand example") {
    const std::vector<double> times{1.0, 2.0, 3.0};
    const std::vector<int> deltas{1, 1, 0};
    const auto s = kaplan_meier(times, deltas, 3.0);

    CHECK(s.evaluate(0.5) == 1.0);
    CHECK(s.evaluate(1.0) == 1.0);          // pre-jump value at the event
    CHECK(s.evaluate(1.5) == 2.0 / 3.0);    // (1 - 1/3)
    CHECK(s.evaluate(2.0) == 2.0 / 3.0);
    CHECK(s.evaluate(2.5) == 1.0 / 3.0);    // (2/3)(1 - 1/2)
    CHECK(s.evaluate(3.0) == 1.0 / 3.0);
    CHECK(s.floor_value == 1.0 / 3.0);
}

TEST_CASE("no censoring reduces to the empirical survival exactly") {
    StreamRng rng(11, 0);
    std::vector<double> times;
    for (int i = 0; i < 97; ++i)
        times.push_back(static_cast<double>(1 + (rng.next_u64() % 30))); // ties on purpose
    const std::vector<int> deltas(times.size(), 1);
    const auto s = kaplan_meier(times, deltas, 31.0);

    const auto n = static_cast<double>(times.size());
    for (double t = 0.5; t <= 31.0; t += 0.25) {
        const auto count = static_cast<double>(
            std::count_if(times.begin(), times.end(), [&](double x) { return x >= t; }));
        const double empirical = count / n;
        if (empirical >= 0.1 / n) // below the clamp the estimate is floored
            CHECK(s.evaluate(t) == empirical);
    }
}

TEST_CASE("single observation clamps beyond the event") {
    const std::vector<double> times{0.5};
    const std::vector<int> deltas{1};
    const auto s = kaplan_meier(times, deltas, 1.0);
    CHECK(s.evaluate(0.5) == 1.0);
    CHECK(s.evaluate(0.6) == 0.1); // floor 1/(10*1)
    CHECK(s.floor_value == 0.1);
}

TEST_CASE("monotone non-increasing with censoring") {
    StreamRng rng(3, 5);
    std::vector<double> times;
    std::vector<int> deltas;
    const double cutoff = 0.8;
    for (int i = 0; i < 200; ++i) {
        const double t = rng.next_unit();
        if (t <= cutoff) {
            times.push_back(t);
            deltas.push_back(1);
        } else {
            times.push_back(cutoff);
            deltas.push_back(0);
        }
    }
    const auto s = kaplan_meier(times, deltas, cutoff);
    double prev = s.evaluate(-1.0);
    CHECK(prev == 1.0);
    for (double t = 0.0; t <= 0.85; t += 0.005) {
        const double v = s.evaluate(t);
        CHECK(v <= prev);
        CHECK(v > 0.0);
        prev = v;
    }
}

TEST_CASE("depends on times only through ranks and ties") {
    const std::vector<double> times{0.1, 0.2, 0.2, 0.8, 0.5, 0.8};
    const std::vector<int> deltas{1, 1, 1, 0, 1, 0};
    std::vector<double> warped(times.size());
    for (std::size_t i = 0; i < times.size(); ++i)
        warped[i] = times[i] * times[i] * 3.0; // strictly increasing map

    // censored entries must sit at the cutoff, so warp the cutoff too
    const auto a = kaplan_meier(times, deltas, 0.8);
    const auto b = kaplan_meier(warped, deltas, 0.8 * 0.8 * 3.0);
    REQUIRE(a.survival_values.size() == b.survival_values.size());
    for (std::size_t i = 0; i < a.survival_values.size(); ++i)
        CHECK(a.survival_values[i] == b.survival_values[i]);
    CHECK(a.floor_value == b.floor_value);
}

TEST_CASE("step drops sum to one minus the floor") {
    StreamRng rng(9, 2);
    std::vector<double> times;
    std::vector<int> deltas;
    const double cutoff = 0.9;
    for (int i = 0; i < 150; ++i) {
        const double t = rng.next_unit();
        times.push_back(std::min(t, cutoff));
        deltas.push_back(t <= cutoff ? 1 : 0);
    }
    const auto s = kaplan_meier(times, deltas, cutoff);
    double drops = 1.0 - s.survival_values.front();
    for (std::size_t k = 1; k < s.survival_values.size(); ++k)
        drops += s.survival_values[k - 1] - s.survival_values[k];
    CHECK(drops == doctest::Approx(1.0 - s.floor_value).epsilon(1e-12));
}

TEST_CASE("input validation") {
    CHECK_THROWS_AS(kaplan_meier(std::vector<double>{}, std::vector<int>{}, 1.0),
                    std::invalid_argument);
    // censored observation away from the cutoff
    CHECK_THROWS_AS(kaplan_meier(std::vector<double>{0.5}, std::vector<int>{0}, 1.0),
                    std::invalid_argument);
    // no events at all
    CHECK_THROWS_AS(kaplan_meier(std::vector<double>{1.0, 1.0}, std::vector<int>{0, 0}, 1.0),
                    std::invalid_argument);
    // time above cutoff
    CHECK_THROWS_AS(kaplan_meier(std::vector<double>{1.5}, std::vector<int>{1}, 1.0),
                    std::invalid_argument);
}
