// Python interface to the scop core: simulation, merging, Kaplan-Meier
// margins, model fitting and curve construction.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "scop/copula_model.hpp"
#include "scop/data_model.hpp"
#include "scop/em_fitter.hpp"
#include "scop/inference.hpp"
#include "scop/simulator.hpp"
#include "scop/survival.hpp"

#include <stdexcept>

namespace py = pybind11;
using namespace scop;

namespace {

RankList make_rank_list(const std::string& list_id, const std::vector<std::string>& ids,
                        const std::vector<double>& scores, double cutoff) {
    if (ids.size() != scores.size())
        throw std::invalid_argument("ids and scores differ in length");
    RankList list;
    list.list_id = list_id;
    list.cutoff = cutoff;
    list.entries.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i)
        list.entries.push_back({ids[i], scores[i]});
    validate(list);
    return list;
}

FitConfig config_from_kwargs(const py::kwargs& kwargs) {
    FitConfig c;
    for (const auto& item : kwargs) {
        const auto key = item.first.cast<std::string>();
        if (key == "seed")
            c.seed = item.second.cast<std::uint64_t>();
        else if (key == "inner_tol")
            c.inner_tol = item.second.cast<double>();
        else if (key == "outer_tol")
            c.outer_tol = item.second.cast<double>();
        else if (key == "max_inner")
            c.max_inner = item.second.cast<int>();
        else if (key == "max_outer")
            c.max_outer = item.second.cast<int>();
        else if (key == "grid_points")
            c.grid_points = item.second.cast<int>();
        else if (key == "multistart")
            c.multistart = item.second.cast<int>();
        else if (key == "min_complete_cases")
            c.min_complete_cases = item.second.cast<int>();
        else if (key == "km_floor_scale")
            c.km_floor_scale = item.second.cast<double>();
        else
            throw std::invalid_argument("unknown fit option '" + key + "'");
    }
    return c;
}

py::dict params_dict(const ModelParams& p) {
    py::dict d;
    d["pi"] = std::vector<double>(p.pi.begin(), p.pi.end());
    d["mu"] = std::vector<double>{p.mu1, p.mu2};
    d["var"] = std::vector<double>{p.var1, p.var2};
    return d;
}

py::dict curve_dict(const std::vector<CurvePoint>& curve) {
    std::vector<int> rank;
    std::vector<double> threshold, value;
    rank.reserve(curve.size());
    for (const auto& p : curve) {
        rank.push_back(p.rank);
        threshold.push_back(p.score_threshold);
        value.push_back(p.value);
    }
    py::dict d;
    d["rank"] = std::move(rank);
    d["score_threshold"] = std::move(threshold);
    d["value"] = std::move(value);
    return d;
}

} // namespace

PYBIND11_MODULE(scop, m) {
    m.doc() = "Survival copula mixture model for comparing two genomic rank lists";

    py::class_<LocusRecord>(m, "LocusRecord")
        .def_readonly("locus_id", &LocusRecord::locus_id)
        .def_readonly("x1", &LocusRecord::x1)
        .def_readonly("x2", &LocusRecord::x2)
        .def_readonly("delta1", &LocusRecord::delta1)
        .def_readonly("delta2", &LocusRecord::delta2);

    py::class_<BivariateDataset>(m, "BivariateDataset")
        .def_readonly("records", &BivariateDataset::records)
        .def_readonly("cutoff1", &BivariateDataset::cutoff1)
        .def_readonly("cutoff2", &BivariateDataset::cutoff2)
        .def_readonly("n_both", &BivariateDataset::n_both)
        .def_readonly("n_only1", &BivariateDataset::n_only1)
        .def_readonly("n_only2", &BivariateDataset::n_only2)
        .def("__len__", &BivariateDataset::size);

    py::class_<MarginalSurvival>(m, "MarginalSurvival")
        .def_readonly("event_times", &MarginalSurvival::event_times)
        .def_readonly("survival_values", &MarginalSurvival::survival_values)
        .def_readonly("cutoff", &MarginalSurvival::cutoff)
        .def_readonly("floor_value", &MarginalSurvival::floor_value)
        .def("evaluate", &MarginalSurvival::evaluate, py::arg("t"));

    py::class_<FitResult>(m, "FitResult")
        .def_property_readonly("params", [](const FitResult& r) { return params_dict(r.params); })
        .def_property_readonly("posteriors",
                               [](const FitResult& r) {
                                   std::vector<std::array<double, 4>> rows(r.posteriors.begin(),
                                                                           r.posteriors.end());
                                   return rows;
                               })
        .def_readonly("converged", &FitResult::converged)
        .def_readonly("n_outer_iters", &FitResult::n_outer_iters)
        .def_readonly("loglik", &FitResult::loglik)
        .def_property_readonly("loglik_trace", [](const FitResult& r) {
            std::vector<double> t;
            t.reserve(r.trace.size());
            for (const auto& e : r.trace)
                t.push_back(e.loglik);
            return t;
        });

    m.def(
        "merge_lists",
        [](const std::vector<std::string>& ids1, const std::vector<double>& scores1,
           double cutoff1, const std::vector<std::string>& ids2,
           const std::vector<double>& scores2, double cutoff2) {
            return merge_lists(make_rank_list("list1", ids1, scores1, cutoff1),
                               make_rank_list("list2", ids2, scores2, cutoff2));
        },
        py::arg("ids1"), py::arg("scores1"), py::arg("cutoff1"), py::arg("ids2"),
        py::arg("scores2"), py::arg("cutoff2"),
        "Merge two rank lists into a right-censored bivariate dataset");

    m.def(
        "venn_summary",
        [](const BivariateDataset& ds) {
            const VennSummary v = venn_summary(ds);
            py::dict d;
            d["n_union"] = v.n_union;
            d["n_intersection"] = v.n_intersection;
            d["n_only1"] = v.n_only1;
            d["n_only2"] = v.n_only2;
            d["fraction_shared"] = v.fraction_shared;
            return d;
        },
        py::arg("dataset"));

    m.def(
        "kaplan_meier",
        [](const std::vector<double>& times, const std::vector<int>& deltas, double cutoff,
           double floor_scale) { return kaplan_meier(times, deltas, cutoff, floor_scale); },
        py::arg("times"), py::arg("deltas"), py::arg("cutoff"), py::arg("floor_scale") = 0.1);

    m.def(
        "simulate",
        [](int n, const std::array<double, 4>& pi, const std::vector<double>& mu,
           const std::vector<double>& var, const std::vector<double>& k, std::uint64_t seed) {
            if (mu.size() != 2 || var.size() != 2 || k.size() != 2)
                throw std::invalid_argument("mu, var and k each need two entries");
            SimConfig c;
            c.n = n;
            c.pi = pi;
            c.mu1 = mu[0];
            c.mu2 = mu[1];
            c.var1 = var[0];
            c.var2 = var[1];
            c.k1 = k[0];
            c.k2 = k[1];
            c.seed = seed;
            const SimOutput out = simulate(c);
            py::dict d;
            d["dataset"] = out.dataset;
            d["labels"] = out.labels;
            d["n_generated"] = out.n_generated;
            d["n_retained"] = out.n_retained;
            return d;
        },
        py::arg("n"), py::arg("pi"), py::arg("mu"), py::arg("var"), py::arg("k"),
        py::arg("seed") = 0);

    m.def(
        "simulate_preset",
        [](const std::string& name, std::uint64_t seed) {
            SimConfig c = preset(name);
            c.seed = seed;
            const SimOutput out = simulate(c);
            py::dict d;
            d["dataset"] = out.dataset;
            d["labels"] = out.labels;
            d["n_generated"] = out.n_generated;
            d["n_retained"] = out.n_retained;
            return d;
        },
        py::arg("name"), py::arg("seed") = 0);

    m.def(
        "fit", [](const BivariateDataset& ds, const py::kwargs& kwargs) {
            return fit(ds, config_from_kwargs(kwargs));
        },
        py::arg("dataset"), "Fit the survival copula mixture (kwargs: seed, inner_tol, ...)");

    m.def(
        "fit_complete_case",
        [](const BivariateDataset& ds, const py::kwargs& kwargs) {
            return fit_complete_case(ds, config_from_kwargs(kwargs));
        },
        py::arg("dataset"));

    m.def("complete_cases", &complete_cases, py::arg("dataset"));

    m.def(
        "coexistence_probability",
        [](const FitResult& r) { return coexistence_probability(r.posteriors); },
        py::arg("fit_result"));

    m.def(
        "cop_curve",
        [](const BivariateDataset& ds, const std::vector<double>& cops, int margin) {
            return curve_dict(cop_curve(ds, cops, margin));
        },
        py::arg("dataset"), py::arg("cops"), py::arg("margin"));

    m.def(
        "idr_curve",
        [](const BivariateDataset& ds, const std::vector<double>& cops, int margin) {
            return curve_dict(idr_curve(cop_curve(ds, cops, margin)));
        },
        py::arg("dataset"), py::arg("cops"), py::arg("margin"));

    m.def(
        "naive_venn_curve",
        [](const BivariateDataset& ds, int margin) {
            return curve_dict(naive_venn_curve(ds, margin));
        },
        py::arg("dataset"), py::arg("margin"));

    m.def(
        "truth_curves",
        [](const std::vector<int>& labels, const BivariateDataset& ds, int margin) {
            return curve_dict(truth_curves(labels, ds, margin));
        },
        py::arg("labels"), py::arg("dataset"), py::arg("margin"));

    m.attr("__version__") = "0.1.0";
}
