#ifndef SCOP_SURVIVAL_HPP
#define SCOP_SURVIVAL_HPP

#include <span>
#include <vector>

namespace scop {

// Kaplan-Meier product-limit estimate of P(T >= t), left-continuous so the
// value at an event time is the pre-jump one. survival_values[k] is the
// value just after event_times[k]; everything is clamped to [floor, 1] so
// the latent transform stays finite.
struct MarginalSurvival {
    std::vector<double> event_times;    // distinct, ascending
    std::vector<double> survival_values; // post-step values, non-increasing
    double cutoff = 0.0;
    double floor_value = 0.0;

    double evaluate(double t) const;
};

// times/deltas per observation; censored observations (delta = 0) must sit
// exactly at the cutoff. floor_scale c sets the clamp at c/n (default 1/(10n)).
MarginalSurvival kaplan_meier(std::span<const double> times, std::span<const int> deltas,
                              double cutoff, double floor_scale = 0.1);

} // namespace scop

#endif
