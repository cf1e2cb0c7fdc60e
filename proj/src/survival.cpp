#include "scop/survival.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <stdexcept>

namespace scop {

double MarginalSurvival::evaluate(double t) const {
    // j = number of event times strictly below t
    auto it = std::lower_bound(event_times.begin(), event_times.end(), t);
    auto j = static_cast<std::size_t>(it - event_times.begin());
    if (j == 0)
        return 1.0;
    return survival_values[j - 1];
}

MarginalSurvival kaplan_meier(std::span<const double> times, std::span<const int> deltas,
                              double cutoff, double floor_scale) {
    const std::size_t n = times.size();
    if (n == 0)
        throw std::invalid_argument("kaplan_meier: empty input");
    if (deltas.size() != n)
        throw std::invalid_argument("kaplan_meier: times/deltas length mismatch");

    std::vector<double> events;
    events.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(times[i]) || times[i] > cutoff)
            throw std::invalid_argument("kaplan_meier: time above cutoff or non-finite");
        if (deltas[i] == 0) {
            if (times[i] != cutoff)
                throw std::invalid_argument(
                    "kaplan_meier: censored observation not at the cutoff");
        } else {
            events.push_back(times[i]);
        }
    }
    if (events.empty())
        throw std::invalid_argument("kaplan_meier: no uncensored observations");

    std::vector<double> all(times.begin(), times.end());
    std::sort(all.begin(), all.end());
    std::sort(events.begin(), events.end());

    MarginalSurvival s;
    s.cutoff = cutoff;
    const double eps = floor_scale / static_cast<double>(n);

    // Running product of (n_k - d_k)/n_k. The pending integer ratio telescopes
    // exactly while there is no censoring, so in that case each value is a
    // single division #{X >= t}/n, matching the empirical survival bit for bit.
    double base = 1.0;
    std::int64_t pnum = 1, pden = 1;
    std::size_t ev = 0;
    while (ev < events.size()) {
        const double t = events[ev];
        std::size_t d = 0;
        while (ev < events.size() && events[ev] == t) {
            ++d;
            ++ev;
        }
        const auto below = static_cast<std::size_t>(
            std::lower_bound(all.begin(), all.end(), t) - all.begin());
        const std::int64_t at_risk = static_cast<std::int64_t>(n - below);
        pnum *= at_risk - static_cast<std::int64_t>(d);
        pden *= at_risk;
        const std::int64_t g = std::gcd(pnum, pden);
        if (g > 1) {
            pnum /= g;
            pden /= g;
        }
        if (pden > (std::int64_t{1} << 40)) {
            base *= static_cast<double>(pnum) / static_cast<double>(pden);
            pnum = 1;
            pden = 1;
        }
        const double value =
            base * (static_cast<double>(pnum) / static_cast<double>(pden));
        s.event_times.push_back(t);
        s.survival_values.push_back(std::clamp(value, eps, 1.0));
    }
    s.floor_value = s.survival_values.back();
    return s;
}

} // namespace scop
