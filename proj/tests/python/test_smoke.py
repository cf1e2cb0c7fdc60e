"""Smoke tests for the scop python module."""

import math

import pytest

scop = pytest.importorskip("scop")


def small_simulation(seed=7):
    return scop.simulate(
        n=400,
        pi=[0.7, 0.0, 0.0, 0.3],
        mu=[-4.0, -4.0],
        var=[1.0, 1.0],
        k=[-1.65, -1.65],
        seed=seed,
    )


def test_simulate_is_deterministic():
    a = small_simulation()
    b = small_simulation()
    assert a["n_retained"] == b["n_retained"]
    ra, rb = a["dataset"].records, b["dataset"].records
    assert [r.locus_id for r in ra] == [r.locus_id for r in rb]
    assert [r.x1 for r in ra] == [r.x1 for r in rb]


def test_merge_and_venn():
    ds = scop.merge_lists(
        ["r1", "r2"], [0.04, 0.03], 0.1, ["r2"], [0.07], 0.1
    )
    assert len(ds) == 2
    venn = scop.venn_summary(ds)
    assert venn["n_union"] == 2
    assert venn["n_intersection"] == 1
    assert venn["fraction_shared"] == 0.5
    rec = ds.records[0]
    assert rec.locus_id == "r1"
    assert rec.delta2 == 0
    assert rec.x2 == 0.1


def test_kaplan_meier_evaluate():
    km = scop.kaplan_meier([1.0, 2.0, 3.0], [1, 1, 0], 3.0)
    assert km.evaluate(1.0) == 1.0
    assert km.evaluate(1.5) == pytest.approx(2.0 / 3.0)
    assert km.floor_value == pytest.approx(1.0 / 3.0)


def test_fit_and_curves():
    sim = small_simulation()
    ds = sim["dataset"]
    result = scop.fit(ds, seed=1, max_outer=6, max_inner=25)
    post = result.posteriors
    assert len(post) == len(ds)
    for row in post:
        assert math.isclose(sum(row), 1.0, abs_tol=1e-12)
        assert all(0.0 <= v <= 1.0 for v in row)
    pi = result.params["pi"]
    assert math.isclose(sum(pi), 1.0, abs_tol=1e-9)

    cops = scop.coexistence_probability(result)
    curve = scop.idr_curve(ds, cops, 1)
    assert curve["rank"][0] == 1
    assert all(0.0 <= v <= 1.0 for v in curve["value"])

    naive = scop.naive_venn_curve(ds, 2)
    assert len(naive["rank"]) == ds.n_both + ds.n_only2

    truth = scop.truth_curves(sim["labels"], ds, 1)
    assert len(truth["value"]) == len(ds)


def test_complete_cases_filter():
    sim = small_simulation()
    cc = scop.complete_cases(sim["dataset"])
    assert len(cc) == sim["dataset"].n_both
    assert all(r.delta1 == 1 and r.delta2 == 1 for r in cc.records)
