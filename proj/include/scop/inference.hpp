#ifndef SCOP_INFERENCE_HPP
#define SCOP_INFERENCE_HPP

#include "scop/data_model.hpp"
#include "scop/em_fitter.hpp"

#include <span>
#include <vector>

namespace scop {

struct CurvePoint {
    int rank;
    double score_threshold;
    double value;
};

// Per-locus coexistence probability Pr(b = 3 | data): column 3 of the
// posterior matrix.
std::vector<double> coexistence_probability(const PosteriorMatrix& posteriors);

// Running mean of cop along the margin's ranking (ties broken by locus_id).
// Records censored in the margin sit at the tail with x = cutoff.
std::vector<CurvePoint> cop_curve(const BivariateDataset& dataset,
                                  std::span<const double> cops, int margin);

// Pointwise 1 - value.
std::vector<CurvePoint> idr_curve(std::span<const CurvePoint> cop);

// Among the margin's reported loci ranked by score, the fraction of the
// top k absent from the other list.
std::vector<CurvePoint> naive_venn_curve(const BivariateDataset& dataset, int margin);

// Same running-mean construction as cop_curve with the indicator b == 3 in
// place of cop; the label oracle for simulated data.
std::vector<CurvePoint> truth_curves(std::span<const int> labels,
                                     const BivariateDataset& dataset, int margin);

} // namespace scop

#endif
