// scop: compare two scored genomic rank lists with list-specific entries
// treated as right-censored data. Subcommands: simulate, fit, curves, venn.

#include "scop/io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <iostream>

namespace fs = std::filesystem;
using namespace scop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 2;
constexpr int kExitNotConverged = 3;

struct ListArgs {
    std::string list1, list2;
    double cutoff1 = 0.0, cutoff2 = 0.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--list1", list1, "TSV rank list 1 (locus_id<TAB>score)")->required();
        cmd->add_option("--list2", list2, "TSV rank list 2")->required();
        cmd->add_option("--cutoff1", cutoff1, "score cutoff of list 1")->required();
        cmd->add_option("--cutoff2", cutoff2, "score cutoff of list 2")->required();
    }

    BivariateDataset load() const {
        const RankList a = read_rank_list(list1, "list1", cutoff1);
        const RankList b = read_rank_list(list2, "list2", cutoff2);
        return merge_lists(a, b);
    }
};

void add_input_digests(Manifest& m, const ListArgs& lists) {
    m.inputs.emplace_back(lists.list1, sha256_file(lists.list1));
    m.inputs.emplace_back(lists.list2, sha256_file(lists.list2));
}

int run_simulate(const std::string& preset_name, const std::string& config_path,
                 std::uint64_t seed, const std::string& outdir) {
    SimConfig cfg;
    if (!config_path.empty())
        cfg = sim_config_from_json_file(config_path);
    else
        cfg = preset(preset_name);
    cfg.seed = seed;

    const SimOutput sim = simulate(cfg);
    fs::create_directories(outdir);
    const fs::path dir(outdir);
    write_rank_list(dir / "list1.tsv", rank_list_of(sim, 1));
    write_rank_list(dir / "list2.tsv", rank_list_of(sim, 2));
    write_labels(dir / "labels.tsv", sim);

    Manifest m;
    m.command = "simulate";
    m.version = kToolVersion;
    m.seed = seed;
    {
        nlohmann::json j;
        j["n"] = cfg.n;
        j["pi"] = cfg.pi;
        j["mu"] = {cfg.mu1, cfg.mu2};
        j["var"] = {cfg.var1, cfg.var2};
        j["k"] = {cfg.k1, cfg.k2};
        j["seed"] = cfg.seed;
        if (!preset_name.empty())
            j["preset"] = preset_name;
        m.config_json = j.dump();
    }
    m.outputs = {"list1.tsv", "list2.tsv", "labels.tsv"};
    write_manifest(dir, m);

    std::cerr << "simulate: generated " << sim.n_generated << " loci, retained "
              << sim.n_retained << "\n";
    return kExitOk;
}

int run_fit(const ListArgs& lists, const std::string& config_path, std::uint64_t seed,
            bool seed_given, const std::string& mode, const std::string& outdir) {
    FitConfig cfg;
    if (!config_path.empty())
        cfg = fit_config_from_json_file(config_path);
    if (seed_given)
        cfg.seed = seed;

    const BivariateDataset ds = lists.load();
    const FitResult result =
        mode == "complete-case" ? fit_complete_case(ds, cfg) : fit(ds, cfg);
    const BivariateDataset& fitted_ds = mode == "complete-case" ? complete_cases(ds) : ds;

    fs::create_directories(outdir);
    const fs::path dir(outdir);
    write_fit_json(dir / "params.json", result);
    write_posteriors_csv(dir / "posteriors.csv", fitted_ds, result.posteriors);
    write_trace_csv(dir / "loglik_trace.csv", result);
    write_venn_json(dir / "venn.json", venn_summary(ds));

    Manifest m;
    m.command = "fit";
    m.version = kToolVersion;
    m.seed = cfg.seed;
    {
        nlohmann::json j = nlohmann::json::parse(fit_config_to_json(cfg));
        j["mode"] = mode;
        j["cutoff1"] = lists.cutoff1;
        j["cutoff2"] = lists.cutoff2;
        m.config_json = j.dump();
    }
    add_input_digests(m, lists);
    m.outputs = {"params.json", "posteriors.csv", "loglik_trace.csv", "venn.json"};
    write_manifest(dir, m);

    std::cerr << "fit: loglik " << result.loglik << ", outer iterations "
              << result.n_outer_iters << (result.converged ? "" : " (not converged)")
              << "\n";
    return result.converged ? kExitOk : kExitNotConverged;
}

int run_curves(const ListArgs& lists, const std::string& fitdir, const std::string& outdir,
               int stride) {
    const fs::path fdir(fitdir);
    // stale-input guard: the lists must be the ones the fit saw
    for (const auto& path : {lists.list1, lists.list2}) {
        const std::string recorded = manifest_input_digest(fdir / "manifest.json", path);
        if (recorded.empty())
            throw std::runtime_error("fit manifest does not cover input '" + path +
                                     "'; refusing to mix runs");
        if (recorded != sha256_file(path))
            throw std::runtime_error("input '" + path +
                                     "' changed since the fit was produced");
    }

    const BivariateDataset ds = lists.load();
    const PosteriorMatrix post = read_posteriors_csv(fdir / "posteriors.csv", ds);
    const std::vector<double> cops = coexistence_probability(post);

    fs::create_directories(outdir);
    const fs::path dir(outdir);
    for (int margin : {1, 2}) {
        const auto cop = cop_curve(ds, cops, margin);
        const auto idr = idr_curve(cop);
        const auto naive = naive_venn_curve(ds, margin);
        const fs::path name = margin == 1 ? "curves_list1.csv" : "curves_list2.csv";
        write_curves_csv(dir / name, cop, idr, naive, stride);
    }

    Manifest m;
    m.command = "curves";
    m.version = kToolVersion;
    {
        nlohmann::json j;
        j["fit_dir"] = fitdir;
        j["stride"] = stride;
        j["cutoff1"] = lists.cutoff1;
        j["cutoff2"] = lists.cutoff2;
        m.config_json = j.dump();
    }
    add_input_digests(m, lists);
    m.inputs.emplace_back((fdir / "posteriors.csv").string(),
                          sha256_file(fdir / "posteriors.csv"));
    m.outputs = {"curves_list1.csv", "curves_list2.csv"};
    write_manifest(dir, m);
    return kExitOk;
}

int run_venn(const ListArgs& lists, const std::string& outdir) {
    const BivariateDataset ds = lists.load();
    const VennSummary venn = venn_summary(ds);
    if (outdir.empty()) {
        std::cout << venn_to_json(venn) << "\n";
        return kExitOk;
    }
    fs::create_directories(outdir);
    write_venn_json(fs::path(outdir) / "venn.json", venn);

    Manifest m;
    m.command = "venn";
    m.version = kToolVersion;
    add_input_digests(m, lists);
    m.outputs = {"venn.json"};
    write_manifest(fs::path(outdir), m);
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"scop: survival copula comparison of two genomic rank lists"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("scop ") + kToolVersion);

    // simulate
    auto* sim = app.add_subcommand("simulate", "generate a synthetic dataset");
    std::string preset_name, sim_config, outdir;
    std::uint64_t seed = 0;
    auto* preset_opt = sim->add_option("--preset", preset_name, "case1, case2 or case3");
    sim->add_option("--sim-config", sim_config, "SimConfig JSON file")->excludes(preset_opt);
    sim->add_option("--seed", seed, "random seed")->default_val(0);
    sim->add_option("--out", outdir, "output directory")->required();

    // fit
    auto* fitcmd = app.add_subcommand("fit", "fit the mixture model to two rank lists");
    ListArgs fit_lists;
    fit_lists.attach(fitcmd);
    std::string fit_config, mode = "full", fit_out;
    std::uint64_t fit_seed = 0;
    fitcmd->add_option("--config", fit_config, "FitConfig JSON file");
    auto* seed_opt = fitcmd->add_option("--seed", fit_seed, "random seed (overrides config)");
    fitcmd->add_option("--mode", mode, "full or complete-case")
        ->check(CLI::IsMember({"full", "complete-case"}))
        ->default_val("full");
    fitcmd->add_option("--out", fit_out, "output directory")->required();

    // curves
    auto* curves = app.add_subcommand("curves", "emit COP/IDR/NaiveVenn curves from a fit");
    ListArgs curve_lists;
    curve_lists.attach(curves);
    std::string curves_fitdir, curves_out;
    int stride = 1;
    curves->add_option("--fit", curves_fitdir, "directory with fit outputs")->required();
    curves->add_option("--out", curves_out, "output directory")->required();
    curves->add_option("--stride", stride, "keep every k-th rank")->default_val(1);

    // venn
    auto* venn = app.add_subcommand("venn", "Venn summary of two rank lists");
    ListArgs venn_lists;
    venn_lists.attach(venn);
    std::string venn_out;
    venn->add_option("--out", venn_out, "output directory (stdout if omitted)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) {
            if (preset_name.empty() && sim_config.empty())
                throw std::runtime_error("simulate needs --preset or --sim-config");
            return run_simulate(preset_name, sim_config, seed, outdir);
        }
        if (fitcmd->parsed())
            return run_fit(fit_lists, fit_config, fit_seed, seed_opt->count() > 0, mode,
                           fit_out);
        if (curves->parsed())
            return run_curves(curve_lists, curves_fitdir, curves_out, stride);
        if (venn->parsed())
            return run_venn(venn_lists, venn_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitOk;
}
