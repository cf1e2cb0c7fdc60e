#ifndef SCOP_IO_HPP
#define SCOP_IO_HPP

#include "scop/data_model.hpp"
#include "scop/em_fitter.hpp"
#include "scop/inference.hpp"
#include "scop/simulator.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace scop {

// TSV with header "locus_id<TAB>score". Parse errors report the line number.
RankList read_rank_list(const std::filesystem::path& path, const std::string& list_id,
                        double cutoff);
void write_rank_list(const std::filesystem::path& path, const RankList& list);

// labels TSV: "locus_id<TAB>b"
void write_labels(const std::filesystem::path& path, const SimOutput& sim);
std::map<std::string, int> read_labels(const std::filesystem::path& path);

std::string params_to_json(const ModelParams& params);
ModelParams params_from_json(const std::string& text);

void write_fit_json(const std::filesystem::path& path, const FitResult& result);
void read_fit_json(const std::filesystem::path& path, ModelParams* params, bool* converged);

std::string venn_to_json(const VennSummary& venn);
void write_venn_json(const std::filesystem::path& path, const VennSummary& venn);

void write_posteriors_csv(const std::filesystem::path& path, const BivariateDataset& dataset,
                          const PosteriorMatrix& posteriors);
PosteriorMatrix read_posteriors_csv(const std::filesystem::path& path,
                                    const BivariateDataset& dataset);

void write_trace_csv(const std::filesystem::path& path, const FitResult& result);

// rank, score_threshold, cop, idr, naive_venn (naive column empty past the
// margin's reported loci)
void write_curves_csv(const std::filesystem::path& path,
                      const std::vector<CurvePoint>& cop,
                      const std::vector<CurvePoint>& idr,
                      const std::vector<CurvePoint>& naive, int stride = 1);

// FitConfig / SimConfig as JSON; absent keys keep their defaults.
FitConfig fit_config_from_json_file(const std::filesystem::path& path);
std::string fit_config_to_json(const FitConfig& config);
SimConfig sim_config_from_json_file(const std::filesystem::path& path);

std::string sha256_file(const std::filesystem::path& path);

// Run manifest written next to every command's outputs. The timestamp honors
// SOURCE_DATE_EPOCH so reruns can be made byte-identical.
struct Manifest {
    std::string command;
    std::string version;
    std::uint64_t seed = 0;
    std::string config_json;                         // resolved settings
    std::vector<std::pair<std::string, std::string>> inputs; // (path, sha256)
    std::vector<std::string> outputs;
};

void write_manifest(const std::filesystem::path& dir, const Manifest& manifest);
// digest recorded for the given input path in a manifest.json, empty if absent
std::string manifest_input_digest(const std::filesystem::path& manifest_path,
                                  const std::string& input_name);

inline constexpr const char* kToolVersion = "0.1.0";

} // namespace scop

#endif
