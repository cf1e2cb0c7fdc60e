#include "scop/inference.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace scop {

namespace {

// indices sorted by (x_margin ascending, locus_id) for a deterministic order
std::vector<std::size_t> margin_order(const BivariateDataset& ds, int margin) {
    if (margin != 1 && margin != 2)
        throw std::invalid_argument("margin must be 1 or 2");
    std::vector<std::size_t> idx(ds.records.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        const double xa = margin == 1 ? ds.records[a].x1 : ds.records[a].x2;
        const double xb = margin == 1 ? ds.records[b].x1 : ds.records[b].x2;
        if (xa != xb)
            return xa < xb;
        return ds.records[a].locus_id < ds.records[b].locus_id;
    });
    return idx;
}

std::vector<CurvePoint> running_mean_curve(const BivariateDataset& ds,
                                           std::span<const double> values, int margin) {
    if (values.size() != ds.records.size())
        throw std::invalid_argument("curve values not aligned with dataset");
    const auto order = margin_order(ds, margin);
    std::vector<CurvePoint> curve;
    curve.reserve(order.size());
    double sum = 0.0;
    int rank = 0;
    for (std::size_t i : order) {
        sum += values[i];
        ++rank;
        const double x = margin == 1 ? ds.records[i].x1 : ds.records[i].x2;
        curve.push_back({rank, x, sum / rank});
    }
    return curve;
}

} // namespace

std::vector<double> coexistence_probability(const PosteriorMatrix& posteriors) {
    std::vector<double> cop(posteriors.size());
    for (std::size_t i = 0; i < posteriors.size(); ++i)
        cop[i] = posteriors[i][3];
    return cop;
}

std::vector<CurvePoint> cop_curve(const BivariateDataset& dataset,
                                  std::span<const double> cops, int margin) {
    return running_mean_curve(dataset, cops, margin);
}

std::vector<CurvePoint> idr_curve(std::span<const CurvePoint> cop) {
    std::vector<CurvePoint> out(cop.begin(), cop.end());
    for (auto& p : out)
        p.value = 1.0 - p.value;
    return out;
}

std::vector<CurvePoint> naive_venn_curve(const BivariateDataset& dataset, int margin) {
    const auto order = margin_order(dataset, margin);
    std::vector<CurvePoint> curve;
    int rank = 0;
    int absent = 0;
    for (std::size_t i : order) {
        const auto& r = dataset.records[i];
        const int delta_own = margin == 1 ? r.delta1 : r.delta2;
        if (!delta_own)
            continue; // NaiveVenn ranks only reported loci
        const int delta_other = margin == 1 ? r.delta2 : r.delta1;
        ++rank;
        absent += 1 - delta_other;
        const double x = margin == 1 ? r.x1 : r.x2;
        curve.push_back({rank, x, static_cast<double>(absent) / rank});
    }
    return curve;
}

std::vector<CurvePoint> truth_curves(std::span<const int> labels,
                                     const BivariateDataset& dataset, int margin) {
    if (labels.size() != dataset.records.size())
        throw std::invalid_argument("truth_curves: labels missing or misaligned");
    std::vector<double> ind(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
        ind[i] = labels[i] == 3 ? 1.0 : 0.0;
    return running_mean_curve(dataset, ind, margin);
}

} // namespace scop
