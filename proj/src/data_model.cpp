#include "scop/data_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <unordered_set>

namespace scop {

void validate(const RankList& list) {
    if (!std::isfinite(list.cutoff) || list.cutoff <= 0.0)
        throw std::invalid_argument("rank list '" + list.list_id +
                                    "': cutoff must be finite and > 0");
    std::unordered_set<std::string> seen;
    seen.reserve(list.entries.size());
    for (const auto& e : list.entries) {
        if (!std::isfinite(e.score) || e.score < 0.0)
            throw std::invalid_argument("rank list '" + list.list_id + "': locus '" +
                                        e.locus_id + "' has invalid score");
        if (e.score > list.cutoff)
            throw std::invalid_argument("rank list '" + list.list_id + "': locus '" +
                                        e.locus_id + "' score exceeds cutoff");
        if (!seen.insert(e.locus_id).second)
            throw std::invalid_argument("rank list '" + list.list_id +
                                        "': duplicate locus '" + e.locus_id + "'");
    }
}

BivariateDataset merge_lists(const RankList& list1, const RankList& list2) {
    validate(list1);
    validate(list2);

    // map keeps records sorted by locus_id, which fixes the dataset order
    std::map<std::string, LocusRecord> merged;
    for (const auto& e : list1.entries) {
        LocusRecord r;
        r.locus_id = e.locus_id;
        r.x1 = e.score;
        r.delta1 = 1;
        r.x2 = list2.cutoff;
        r.delta2 = 0;
        merged.emplace(e.locus_id, std::move(r));
    }
    for (const auto& e : list2.entries) {
        auto [it, inserted] = merged.try_emplace(e.locus_id);
        if (inserted) {
            it->second.locus_id = e.locus_id;
            it->second.x1 = list1.cutoff;
            it->second.delta1 = 0;
        }
        it->second.x2 = e.score;
        it->second.delta2 = 1;
    }

    BivariateDataset ds;
    ds.cutoff1 = list1.cutoff;
    ds.cutoff2 = list2.cutoff;
    ds.records.reserve(merged.size());
    for (auto& [id, rec] : merged) {
        if (rec.delta1 && rec.delta2)
            ++ds.n_both;
        else if (rec.delta1)
            ++ds.n_only1;
        else
            ++ds.n_only2;
        ds.records.push_back(std::move(rec));
    }
    return ds;
}

VennSummary venn_summary(const BivariateDataset& dataset) {
    VennSummary v;
    v.n_intersection = dataset.n_both;
    v.n_only1 = dataset.n_only1;
    v.n_only2 = dataset.n_only2;
    v.n_union = v.n_intersection + v.n_only1 + v.n_only2;
    v.fraction_shared =
        v.n_union > 0 ? static_cast<double>(v.n_intersection) / static_cast<double>(v.n_union)
                      : 0.0;
    return v;
}

BivariateDataset complete_cases(const BivariateDataset& dataset) {
    BivariateDataset out;
    out.cutoff1 = dataset.cutoff1;
    out.cutoff2 = dataset.cutoff2;
    for (const auto& r : dataset.records)
        if (r.delta1 && r.delta2)
            out.records.push_back(r);
    out.n_both = out.size();
    return out;
}

} // namespace scop
