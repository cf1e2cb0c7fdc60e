#ifndef SCOP_DATA_MODEL_HPP
#define SCOP_DATA_MODEL_HPP

#include <string>
#include <vector>

namespace scop {

// One scored rank list: smaller score = more significant, every score
// passed the list's reporting cutoff.
struct RankEntry {
    std::string locus_id;
    double score;
};

struct RankList {
    std::string list_id;
    std::vector<RankEntry> entries;
    double cutoff;
};

// Throws std::invalid_argument naming the offending locus on duplicate ids,
// non-finite/negative scores, scores above the cutoff, or a bad cutoff.
void validate(const RankList& list);

// One locus of the merged bivariate sample. x_j is the observed survival
// time min(score, cutoff); delta_j = 1 iff the locus was reported in list j.
struct LocusRecord {
    std::string locus_id;
    double x1 = 0.0;
    double x2 = 0.0;
    int delta1 = 0;
    int delta2 = 0;
};

struct BivariateDataset {
    std::vector<LocusRecord> records; // sorted by locus_id
    double cutoff1 = 0.0;
    double cutoff2 = 0.0;
    int n_both = 0;
    int n_only1 = 0;
    int n_only2 = 0;

    int size() const { return static_cast<int>(records.size()); }
};

struct VennSummary {
    long n_union = 0;
    long n_intersection = 0;
    long n_only1 = 0;
    long n_only2 = 0;
    double fraction_shared = 0.0;
};

// Union of the two lists as a right-censored bivariate sample. A locus
// absent from list j gets x_j = cutoff_j, delta_j = 0. Loci in neither
// list never appear, so every record has at least one delta = 1.
BivariateDataset merge_lists(const RankList& list1, const RankList& list2);

VennSummary venn_summary(const BivariateDataset& dataset);

// Records reported in both lists (delta1 = delta2 = 1), counts refreshed.
BivariateDataset complete_cases(const BivariateDataset& dataset);

} // namespace scop

#endif
