#include <doctest.h>

#include "scop/data_model.hpp"
#include "scop/rng.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

using namespace scop;

namespace {

RankList make_list(std::string id, std::vector<std::pair<std::string, double>> entries,
                   double cutoff) {
    RankList l;
    l.list_id = std::move(id);
    l.cutoff = cutoff;
    for (auto& [lid, s] : entries)
        l.entries.push_back({lid, s});
    return l;
}

} // namespace

TEST_CASE("merge encodes reported and censored loci") {
    const auto a = make_list("A", {{"r1", 0.04}, {"r2", 0.03}}, 0.1);
    const auto b = make_list("B", {{"r2", 0.07}}, 0.1);
    const auto ds = merge_lists(a, b);

    REQUIRE(ds.size() == 2);
    const auto& r1 = ds.records[0];
    CHECK(r1.locus_id == "r1");
    CHECK(r1.x1 == 0.04);
    CHECK(r1.delta1 == 1);
    CHECK(r1.x2 == 0.1); // censored at list B's cutoff
    CHECK(r1.delta2 == 0);

    const auto& r2 = ds.records[1];
    CHECK(r2.x1 == 0.03);
    CHECK(r2.x2 == 0.07);
    CHECK(r2.delta1 == 1);
    CHECK(r2.delta2 == 1);
}

TEST_CASE("disjoint lists censor each other") {
    const auto ds = merge_lists(make_list("A", {{"a", 0.01}}, 0.05),
                                make_list("B", {{"b", 0.02}}, 0.05));
    REQUIRE(ds.size() == 2);
    CHECK(ds.records[0].x1 == 0.01);
    CHECK(ds.records[0].x2 == 0.05);
    CHECK(ds.records[0].delta2 == 0);
    CHECK(ds.records[1].x1 == 0.05);
    CHECK(ds.records[1].delta1 == 0);
    CHECK(ds.records[1].x2 == 0.02);

    const auto v = venn_summary(ds);
    CHECK(v.n_union == 2);
    CHECK(v.n_intersection == 0);
    CHECK(v.fraction_shared == 0.0);
}

TEST_CASE("fully shared lists give fraction one") {
    const auto ds = merge_lists(make_list("A", {{"a", 0.01}, {"b", 0.02}}, 0.05),
                                make_list("B", {{"a", 0.03}, {"b", 0.01}}, 0.05));
    const auto v = venn_summary(ds);
    CHECK(v.n_intersection == v.n_union);
    CHECK(v.fraction_shared == 1.0);
}

TEST_CASE("ingestion rejects bad lists") {
    CHECK_THROWS_WITH_AS(
        merge_lists(make_list("A", {{"dup", 0.01}, {"dup", 0.02}}, 0.1),
                    make_list("B", {}, 0.1)),
        doctest::Contains("dup"), std::invalid_argument);
    CHECK_THROWS_AS(merge_lists(make_list("A", {{"a", 0.2}}, 0.1),
                                make_list("B", {}, 0.1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(merge_lists(make_list("A", {{"a", -0.1}}, 0.1),
                                make_list("B", {}, 0.1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(merge_lists(make_list("A", {{"a", std::nan("")}}, 0.1),
                                make_list("B", {}, 0.1)),
                    std::invalid_argument);
    CHECK_THROWS_AS(merge_lists(make_list("A", {{"a", 0.01}}, 0.0),
                                make_list("B", {}, 0.1)),
                    std::invalid_argument);
}

TEST_CASE("merge is symmetric up to coordinate swap") {
    StreamRng rng(42, 0);
    RankList a = make_list("A", {}, 1.0);
    RankList b = make_list("B", {}, 1.0);
    for (int i = 0; i < 50; ++i) {
        const std::string id = "g" + std::to_string(i);
        if (rng.next_unit() < 0.6)
            a.entries.push_back({id, rng.next_unit()});
        if (rng.next_unit() < 0.6)
            b.entries.push_back({id, rng.next_unit()});
    }
    const auto ab = merge_lists(a, b);
    const auto ba = merge_lists(b, a);
    REQUIRE(ab.size() == ba.size());
    for (int i = 0; i < ab.size(); ++i) {
        CHECK(ab.records[i].locus_id == ba.records[i].locus_id);
        CHECK(ab.records[i].x1 == ba.records[i].x2);
        CHECK(ab.records[i].x2 == ba.records[i].x1);
        CHECK(ab.records[i].delta1 == ba.records[i].delta2);
        CHECK(ab.records[i].delta2 == ba.records[i].delta1);
    }
    CHECK(ab.n_only1 == ba.n_only2);
}

TEST_CASE("monotone transform of one list preserves structure") {
    StreamRng rng(7, 1);
    RankList a = make_list("A", {}, 1.0);
    RankList b = make_list("B", {}, 1.0);
    for (int i = 0; i < 40; ++i) {
        const std::string id = "g" + std::to_string(i);
        if (rng.next_unit() < 0.7)
            a.entries.push_back({id, rng.next_unit()});
        if (rng.next_unit() < 0.7)
            b.entries.push_back({id, rng.next_unit()});
    }
    RankList b2 = b;
    b2.cutoff = b.cutoff * b.cutoff;
    for (auto& e : b2.entries)
        e.score = e.score * e.score; // strictly increasing on [0, inf)

    const auto ds = merge_lists(a, b);
    const auto ds2 = merge_lists(a, b2);
    REQUIRE(ds.size() == ds2.size());
    for (int i = 0; i < ds.size(); ++i) {
        CHECK(ds.records[i].delta1 == ds2.records[i].delta1);
        CHECK(ds.records[i].delta2 == ds2.records[i].delta2);
        CHECK(ds.records[i].x1 == ds2.records[i].x1);
    }
    const auto v = venn_summary(ds);
    const auto v2 = venn_summary(ds2);
    CHECK(v.n_union == v2.n_union);
    CHECK(v.n_intersection == v2.n_intersection);

    // rank order within margin 2 unchanged
    for (int i = 0; i < ds.size(); ++i)
        for (int j = i + 1; j < ds.size(); ++j) {
            const bool lt = ds.records[i].x2 < ds.records[j].x2;
            const bool lt2 = ds2.records[i].x2 < ds2.records[j].x2;
            CHECK(lt == lt2);
        }
}

TEST_CASE("record count equals the id union") {
    const auto a = make_list("A", {{"a", 0.1}, {"b", 0.2}, {"c", 0.3}}, 1.0);
    const auto b = make_list("B", {{"b", 0.1}, {"d", 0.2}}, 1.0);
    const auto ds = merge_lists(a, b);
    std::set<std::string> ids;
    for (const auto& e : a.entries)
        ids.insert(e.locus_id);
    for (const auto& e : b.entries)
        ids.insert(e.locus_id);
    CHECK(ds.size() == static_cast<int>(ids.size()));
    CHECK(ds.n_both + ds.n_only1 + ds.n_only2 == ds.size());
}

TEST_CASE("complete cases keeps only doubly reported records") {
    const auto ds = merge_lists(make_list("A", {{"a", 0.01}, {"b", 0.02}}, 0.05),
                                make_list("B", {{"b", 0.01}, {"c", 0.04}}, 0.05));
    const auto cc = complete_cases(ds);
    REQUIRE(cc.size() == 1);
    CHECK(cc.records[0].locus_id == "b");
    CHECK(cc.n_both == 1);
    CHECK(cc.n_only1 == 0);
}
