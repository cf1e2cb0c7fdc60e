#include "scop/io.hpp"

#include <json.hpp>
#include <openssl/evp.h>

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace scop {

namespace {

using nlohmann::json;

std::string fmt_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "'");
    return in;
}

std::ofstream open_output(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write '" + path.string() + "'");
    return out;
}

json read_json_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("bad JSON in '" + path.string() + "': " + e.what());
    }
    return j;
}

} // namespace

RankList read_rank_list(const std::filesystem::path& path, const std::string& list_id,
                        double cutoff) {
    auto in = open_input(path);
    RankList list;
    list.list_id = list_id;
    list.cutoff = cutoff;

    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (lineno == 1) {
            if (line != "locus_id\tscore")
                throw std::runtime_error(path.string() +
                                         ":1: expected header 'locus_id<TAB>score'");
            continue;
        }
        if (line.empty())
            continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos || tab == 0)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": malformed row (need locus_id<TAB>score)");
        const std::string id = line.substr(0, tab);
        const std::string scoretext = line.substr(tab + 1);
        char* end = nullptr;
        const double score = std::strtod(scoretext.c_str(), &end);
        if (end == scoretext.c_str() || *end != '\0')
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": unparseable score '" + scoretext + "'");
        list.entries.push_back({id, score});
    }
    validate(list);
    return list;
}

void write_rank_list(const std::filesystem::path& path, const RankList& list) {
    auto out = open_output(path);
    out << "locus_id\tscore\n";
    for (const auto& e : list.entries)
        out << e.locus_id << '\t' << fmt_double(e.score) << '\n';
}

void write_labels(const std::filesystem::path& path, const SimOutput& sim) {
    auto out = open_output(path);
    out << "locus_id\tb\n";
    for (std::size_t i = 0; i < sim.labels.size(); ++i)
        out << sim.dataset.records[i].locus_id << '\t' << sim.labels[i] << '\n';
}

std::map<std::string, int> read_labels(const std::filesystem::path& path) {
    auto in = open_input(path);
    std::map<std::string, int> labels;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty())
            continue;
        const auto tab = line.find('\t');
        if (tab == std::string::npos)
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": malformed label row");
        labels[line.substr(0, tab)] = std::stoi(line.substr(tab + 1));
    }
    return labels;
}

std::string params_to_json(const ModelParams& params) {
    json j;
    j["pi"] = params.pi;
    j["mu"] = {params.mu1, params.mu2};
    j["var"] = {params.var1, params.var2};
    return j.dump(2);
}

ModelParams params_from_json(const std::string& text) {
    const json j = json::parse(text);
    ModelParams p;
    p.pi = j.at("pi").get<std::array<double, 4>>();
    p.mu1 = j.at("mu").at(0).get<double>();
    p.mu2 = j.at("mu").at(1).get<double>();
    p.var1 = j.at("var").at(0).get<double>();
    p.var2 = j.at("var").at(1).get<double>();
    validate(p);
    return p;
}

void write_fit_json(const std::filesystem::path& path, const FitResult& result) {
    json j;
    j["params"]["pi"] = result.params.pi;
    j["params"]["mu"] = {result.params.mu1, result.params.mu2};
    j["params"]["var"] = {result.params.var1, result.params.var2};
    j["converged"] = result.converged;
    j["n_outer_iters"] = result.n_outer_iters;
    j["loglik"] = result.loglik;
    open_output(path) << j.dump(2) << '\n';
}

void read_fit_json(const std::filesystem::path& path, ModelParams* params, bool* converged) {
    const json j = read_json_file(path);
    if (params) {
        *params = params_from_json(j.at("params").dump());
    }
    if (converged)
        *converged = j.at("converged").get<bool>();
}

std::string venn_to_json(const VennSummary& venn) {
    json j;
    j["n_union"] = venn.n_union;
    j["n_intersection"] = venn.n_intersection;
    j["n_only1"] = venn.n_only1;
    j["n_only2"] = venn.n_only2;
    j["fraction_shared"] = venn.fraction_shared;
    return j.dump(2);
}

void write_venn_json(const std::filesystem::path& path, const VennSummary& venn) {
    open_output(path) << venn_to_json(venn) << '\n';
}

void write_posteriors_csv(const std::filesystem::path& path, const BivariateDataset& dataset,
                          const PosteriorMatrix& posteriors) {
    if (posteriors.size() != dataset.records.size())
        throw std::invalid_argument("posteriors not aligned with dataset");
    auto out = open_output(path);
    out << "locus_id,p0,p1,p2,p3\n";
    for (std::size_t i = 0; i < posteriors.size(); ++i) {
        out << dataset.records[i].locus_id;
        for (double v : posteriors[i])
            out << ',' << fmt_double(v);
        out << '\n';
    }
}

PosteriorMatrix read_posteriors_csv(const std::filesystem::path& path,
                                    const BivariateDataset& dataset) {
    auto in = open_input(path);
    std::map<std::string, std::array<double, 4>> rows;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (lineno == 1 || line.empty())
            continue;
        std::istringstream ss(line);
        std::string id, field;
        if (!std::getline(ss, id, ','))
            throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                     ": malformed posterior row");
        std::array<double, 4> row{};
        for (int k = 0; k < 4; ++k) {
            if (!std::getline(ss, field, ','))
                throw std::runtime_error(path.string() + ":" + std::to_string(lineno) +
                                         ": malformed posterior row");
            row[k] = std::stod(field);
        }
        rows[id] = row;
    }
    PosteriorMatrix post;
    post.reserve(dataset.records.size());
    for (const auto& r : dataset.records) {
        auto it = rows.find(r.locus_id);
        if (it == rows.end())
            throw std::runtime_error("posteriors file missing locus '" + r.locus_id + "'");
        post.push_back(it->second);
    }
    return post;
}

void write_trace_csv(const std::filesystem::path& path, const FitResult& result) {
    auto out = open_output(path);
    out << "outer,inner,loglik\n";
    for (const auto& t : result.trace)
        out << t.outer << ',' << t.inner << ',' << fmt_double(t.loglik) << '\n';
}

void write_curves_csv(const std::filesystem::path& path,
                      const std::vector<CurvePoint>& cop,
                      const std::vector<CurvePoint>& idr,
                      const std::vector<CurvePoint>& naive, int stride) {
    if (cop.size() != idr.size())
        throw std::invalid_argument("cop/idr curves differ in length");
    if (stride < 1)
        stride = 1;
    auto out = open_output(path);
    out << "rank,score_threshold,cop,idr,naive_venn\n";
    for (std::size_t i = 0; i < cop.size(); ++i) {
        if (stride > 1 && (i + 1) % stride != 0 && i + 1 != cop.size())
            continue;
        out << cop[i].rank << ',' << fmt_double(cop[i].score_threshold) << ','
            << fmt_double(cop[i].value) << ',' << fmt_double(idr[i].value) << ',';
        if (i < naive.size())
            out << fmt_double(naive[i].value);
        out << '\n';
    }
}

FitConfig fit_config_from_json_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    FitConfig c;
    c.seed = j.value("seed", c.seed);
    c.inner_tol = j.value("inner_tol", c.inner_tol);
    c.outer_tol = j.value("outer_tol", c.outer_tol);
    c.max_inner = j.value("max_inner", c.max_inner);
    c.max_outer = j.value("max_outer", c.max_outer);
    c.grid_points = j.value("grid_points", c.grid_points);
    c.multistart = j.value("multistart", c.multistart);
    c.min_complete_cases = j.value("min_complete_cases", c.min_complete_cases);
    c.km_floor_scale = j.value("km_floor_scale", c.km_floor_scale);
    if (j.contains("init"))
        c.init = params_from_json(j.at("init").dump());
    return c;
}

std::string fit_config_to_json(const FitConfig& config) {
    json j;
    j["seed"] = config.seed;
    j["inner_tol"] = config.inner_tol;
    j["outer_tol"] = config.outer_tol;
    j["max_inner"] = config.max_inner;
    j["max_outer"] = config.max_outer;
    j["grid_points"] = config.grid_points;
    j["multistart"] = config.multistart;
    j["min_complete_cases"] = config.min_complete_cases;
    j["km_floor_scale"] = config.km_floor_scale;
    j["init"] = json::parse(params_to_json(config.init));
    return j.dump();
}

SimConfig sim_config_from_json_file(const std::filesystem::path& path) {
    const json j = read_json_file(path);
    SimConfig c;
    c.n = j.at("n").get<int>();
    c.pi = j.at("pi").get<std::array<double, 4>>();
    c.mu1 = j.at("mu").at(0).get<double>();
    c.mu2 = j.at("mu").at(1).get<double>();
    c.var1 = j.at("var").at(0).get<double>();
    c.var2 = j.at("var").at(1).get<double>();
    c.k1 = j.at("k").at(0).get<double>();
    c.k2 = j.at("k").at(1).get<double>();
    c.seed = j.value("seed", std::uint64_t{0});
    return c;
}

std::string sha256_file(const std::filesystem::path& path) {
    auto in = std::ifstream(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open '" + path.string() + "' for digest");
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    if (!ctx || EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr) != 1) {
        EVP_MD_CTX_free(ctx);
        throw std::runtime_error("sha256 init failed");
    }
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof(buf));
        if (in.gcount() > 0)
            EVP_DigestUpdate(ctx, buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

namespace {

std::string manifest_timestamp() {
    std::time_t t;
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        t = static_cast<std::time_t>(std::strtoll(epoch, nullptr, 10));
    } else {
        t = std::time(nullptr);
    }
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace

void write_manifest(const std::filesystem::path& dir, const Manifest& manifest) {
    json j;
    j["command"] = manifest.command;
    j["version"] = manifest.version;
    j["seed"] = manifest.seed;
    j["config"] = manifest.config_json.empty() ? json::object()
                                               : json::parse(manifest.config_json);
    json inputs = json::object();
    for (const auto& [name, digest] : manifest.inputs)
        inputs[name] = digest;
    j["inputs"] = inputs;
    j["outputs"] = manifest.outputs;
    j["timestamp"] = manifest_timestamp();
    open_output(dir / "manifest.json") << j.dump(2) << '\n';
}

std::string manifest_input_digest(const std::filesystem::path& manifest_path,
                                  const std::string& input_name) {
    const json j = read_json_file(manifest_path);
    if (!j.contains("inputs") || !j.at("inputs").contains(input_name))
        return {};
    return j.at("inputs").at(input_name).get<std::string>();
}

} // namespace scop
