#ifndef SCOP_SIMULATOR_HPP
#define SCOP_SIMULATOR_HPP

#include "scop/data_model.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace scop {

// Generative settings: n loci drawn from the four-pattern mixture, latent
// normals truncated at K_j, scores emitted on the p-value scale Phi(z).
struct SimConfig {
    int n = 0;
    std::array<double, 4> pi{};
    double mu1 = 0.0, var1 = 1.0;
    double mu2 = 0.0, var2 = 1.0;
    double k1 = 0.0, k2 = 0.0;
    std::uint64_t seed = 0;
};

struct SimOutput {
    BivariateDataset dataset;
    std::vector<int> labels; // b for each retained locus, aligned with records
    int n_generated = 0;
    int n_retained = 0;
};

// Seeded, counter-based per locus: identical config gives bitwise-identical
// output regardless of evaluation order. Loci censored in both lists are
// dropped.
SimOutput simulate(const SimConfig& config);

// case1, case2, case3 reproduce the synthetic designs; seed left at 0.
SimConfig preset(const std::string& name);

// The two reported rank lists of a simulated dataset (loci with delta_j = 1).
RankList rank_list_of(const SimOutput& sim, int margin);

} // namespace scop

#endif
