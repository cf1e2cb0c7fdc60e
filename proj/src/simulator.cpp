#include "scop/simulator.hpp"

#include "scop/normal.hpp"
#include "scop/rng.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace scop {

namespace {

std::string locus_name(int index) {
    char buf[16];
    std::snprintf(buf, sizeof(buf), "L%07d", index);
    return buf;
}

void validate(const SimConfig& c) {
    if (c.n <= 0)
        throw std::invalid_argument("simulate: n must be positive");
    double sum = 0.0;
    for (double p : c.pi) {
        if (!(p >= 0.0))
            throw std::invalid_argument("simulate: pi component < 0");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw std::invalid_argument("simulate: pi does not sum to 1");
    if (!(c.mu1 < 0.0) || !(c.mu2 < 0.0) || !(c.var1 > 0.0) || !(c.var2 > 0.0))
        throw std::invalid_argument("simulate: invalid signal components");
}

} // namespace

SimOutput simulate(const SimConfig& config) {
    validate(config);

    const double sd1 = std::sqrt(config.var1);
    const double sd2 = std::sqrt(config.var2);
    const double c0 = config.pi[0];
    const double c1 = c0 + config.pi[1];
    const double c2 = c1 + config.pi[2];

    SimOutput out;
    out.n_generated = config.n;
    out.dataset.cutoff1 = norm_cdf(config.k1);
    out.dataset.cutoff2 = norm_cdf(config.k2);

    for (int i = 0; i < config.n; ++i) {
        StreamRng rng(config.seed, static_cast<std::uint64_t>(i));
        const double ub = rng.next_unit();
        const int b = ub < c0 ? 0 : ub < c1 ? 1 : ub < c2 ? 2 : 3;

        double zt1 = norm_quantile(rng.next_unit());
        double zt2 = norm_quantile(rng.next_unit());
        if (b == 1 || b == 3)
            zt1 = config.mu1 + sd1 * zt1;
        if (b == 2 || b == 3)
            zt2 = config.mu2 + sd2 * zt2;

        const int d1 = zt1 <= config.k1 ? 1 : 0;
        const int d2 = zt2 <= config.k2 ? 1 : 0;
        if (!d1 && !d2)
            continue;

        LocusRecord r;
        r.locus_id = locus_name(i);
        r.delta1 = d1;
        r.delta2 = d2;
        r.x1 = d1 ? norm_cdf(zt1) : out.dataset.cutoff1;
        r.x2 = d2 ? norm_cdf(zt2) : out.dataset.cutoff2;
        out.dataset.records.push_back(std::move(r));
        out.labels.push_back(b);
        if (d1 && d2)
            ++out.dataset.n_both;
        else if (d1)
            ++out.dataset.n_only1;
        else
            ++out.dataset.n_only2;
    }
    out.n_retained = out.dataset.size();
    return out;
}

SimConfig preset(const std::string& name) {
    SimConfig c;
    c.k1 = c.k2 = -1.65;
    c.var1 = c.var2 = 1.0;
    if (name == "case1") {
        c.n = 10000;
        c.pi = {0.9, 0.0, 0.0, 0.1};
        c.mu1 = c.mu2 = -5.0;
    } else if (name == "case2") {
        // 1,200 loci put the reported union near the published 1,083
        c.n = 1200;
        c.pi = {0.1, 0.0, 0.0, 0.9};
        c.mu1 = c.mu2 = -5.0;
    } else if (name == "case3") {
        c.n = 10000;
        c.pi = {0.3, 0.5, 0.0, 0.2};
        c.mu1 = c.mu2 = -3.0;
    } else {
        throw std::invalid_argument("unknown preset '" + name +
                                    "' (valid: case1, case2, case3)");
    }
    return c;
}

RankList rank_list_of(const SimOutput& sim, int margin) {
    if (margin != 1 && margin != 2)
        throw std::invalid_argument("margin must be 1 or 2");
    RankList list;
    list.list_id = margin == 1 ? "list1" : "list2";
    list.cutoff = margin == 1 ? sim.dataset.cutoff1 : sim.dataset.cutoff2;
    for (const auto& r : sim.dataset.records) {
        const int d = margin == 1 ? r.delta1 : r.delta2;
        if (d)
            list.entries.push_back({r.locus_id, margin == 1 ? r.x1 : r.x2});
    }
    return list;
}

} // namespace scop
