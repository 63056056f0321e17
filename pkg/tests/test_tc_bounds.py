"""The bound engine: certified lower bounds, upper bounds, stable values."""

from __future__ import annotations

import pytest

from conftest import cycle_graph, hgraph, spider, star, theta
from gbtc.corpus import bundled_graphs
from gbtc.graph_core import Graph, HypothesisError, classify
from gbtc.tc_bounds import (
    BoundQuery,
    BoundReport,
    admissible_choices,
    bound_value,
    greedy_choice,
    lower_bound,
    proof_chain_check,
    stable_report,
    upper_bound,
)


def test_lower_bound_hgraph_example():
    rep = lower_bound(BoundQuery(hgraph(), 2, 6))
    assert rep.choice == (0, 2, 0)
    assert rep.lower == 4


def test_lower_bound_theta_example():
    rep = lower_bound(BoundQuery(theta(), 3, 4))
    assert rep.choice == (0, 0, 2)
    assert rep.lower == 4
    assert rep.upper == 6


def test_lower_bound_k_zero_forces_empty_choice():
    rep = lower_bound(BoundQuery(hgraph(), 2, 0))
    assert rep.choice == (0, 0, 0)
    assert rep.lower == 0


def test_lower_bound_rejects_r_one():
    with pytest.raises(HypothesisError):
        lower_bound(BoundQuery(hgraph(), 1, 6))


def test_lower_bound_rejects_small_m():
    with pytest.raises(HypothesisError):
        lower_bound(BoundQuery(star(4), 2, 6))


def test_lower_bound_rejects_disconnected():
    g = Graph(("a", "b", "c", "d"), (("a", "b"), ("c", "d")))
    with pytest.raises(HypothesisError):
        lower_bound(BoundQuery(g, 2, 4))


def test_bound_query_validation():
    with pytest.raises(ValueError):
        BoundQuery(hgraph(), 0, 4)
    with pytest.raises(ValueError):
        BoundQuery(hgraph(), 2, -1)


def test_upper_bound_examples():
    assert upper_bound(BoundQuery(theta(), 3, 4)) == 6
    assert upper_bound(BoundQuery(hgraph(), 2, 6)) == 4
    assert upper_bound(BoundQuery(theta(), 1, 4)) == 2


def test_upper_bound_caveat_below_range():
    rep = lower_bound(BoundQuery(hgraph(), 2, 3))
    assert any("range" in c for c in rep.caveats)
    rep = lower_bound(BoundQuery(hgraph(), 2, 6))
    assert rep.caveats == ()


def test_stable_report_hgraph():
    rep = stable_report(hgraph(), 2)
    assert rep.stable_value == 4
    assert rep.k0 == 6


def test_stable_report_spider():
    rep = stable_report(spider(), 3)
    assert rep.stable_value == 6
    assert rep.k0 == 4


def test_stable_report_theta_has_no_value():
    rep = stable_report(theta(), 2)
    assert rep.stable_value is None and rep.k0 is None
    assert rep.caveats


def test_stable_report_r_one_uses_same_formula():
    rep = stable_report(hgraph(), 1)
    assert rep.stable_value == 2
    assert rep.k0 == 6


def test_stable_report_rejects_bad_inputs():
    with pytest.raises(HypothesisError):
        stable_report(star(3), 2)
    with pytest.raises(HypothesisError):
        stable_report(cycle_graph(4), 2)
    with pytest.raises(HypothesisError):
        stable_report(hgraph(), 0)


def test_proof_chain_hgraph_r5():
    check = proof_chain_check(hgraph(), 5)
    assert check.ok
    assert any("10" in s for s in check.steps)


def test_proof_chain_spider_r2():
    assert proof_chain_check(spider(), 2).ok


def test_proof_chain_theta_inapplicable():
    check = proof_chain_check(theta(), 2)
    assert not check.ok
    assert any("non-separating" in s for s in check.steps)


def test_lower_at_most_upper_in_range():
    for name, g in bundled_graphs():
        cls = classify(g)
        if cls.m < 2:
            continue
        for r in range(2, 7):
            for k in range(0, 13):
                rep = lower_bound(BoundQuery(g, r, k))
                if k >= 2 * cls.m:
                    assert rep.lower <= rep.upper, (name, r, k)


def test_lower_bound_monotone_in_k_and_r():
    for name, g in bundled_graphs():
        cls = classify(g)
        if cls.m < 2:
            continue
        grid = {
            (r, k): lower_bound(BoundQuery(g, r, k)).lower
            for r in range(2, 7)
            for k in range(0, 13)
        }
        for r in range(2, 7):
            for k in range(0, 12):
                assert grid[(r, k)] <= grid[(r, k + 1)], (name, r, k)
        for r in range(2, 6):
            for k in range(0, 13):
                assert grid[(r, k)] <= grid[(r + 1, k)], (name, r, k)


def test_exhaustive_matches_greedy_on_corpus():
    for name, g in bundled_graphs():
        cls = classify(g)
        if cls.m < 2:
            continue
        for r in range(2, 7):
            for k in range(0, 13):
                rep = lower_bound(BoundQuery(g, r, k))
                assert rep.choice == greedy_choice(cls, k), (name, r, k)


def test_stable_equality_from_k0():
    for name, g in bundled_graphs():
        cls = classify(g)
        if cls.m < 2 or cls.n2 > 0:
            continue
        k0 = 2 * cls.m + cls.trivalent_total
        for r in range(2, 7):
            for k in range(k0, k0 + 5):
                rep = lower_bound(BoundQuery(g, r, k))
                assert rep.lower == rep.upper == r * cls.m, (name, r, k)
            assert proof_chain_check(g, r).ok, (name, r)


def test_admissibility_constraint_enforced():
    cls = classify(hgraph())
    for k in range(0, 10):
        for c in admissible_choices(cls, k):
            assert 2 * (c[0] + c[2]) + 3 * c[1] <= k
    # bound_value is the certified formula
    assert bound_value(3, 4, 2, (0, 0, 2)) == 1 * 2 + 2


def test_report_validation():
    cls = classify(hgraph())
    with pytest.raises(ValueError):
        BoundReport(cls, r=2, k=6, choice=(1, 0, 0), lower=0, upper=4)
    with pytest.raises(ValueError):
        BoundReport(cls, r=2, k=0, choice=(0, 2, 0), lower=0, upper=4)
    with pytest.raises(ValueError):
        BoundReport(cls, r=2, lower=5, upper=4)


def test_report_serialization_fields():
    rep = lower_bound(BoundQuery(theta(), 3, 4))
    d = rep.as_dict()
    assert set(d) == {
        "classification",
        "r",
        "k",
        "choice",
        "lower",
        "upper",
        "stable_value",
        "k0",
        "caveats",
        "homology_status",
    }
    assert d["lower"] == 4 and d["upper"] == 6 and d["choice"] == [0, 0, 2]


def test_homology_status_passthrough():
    rep = lower_bound(BoundQuery(hgraph(), 2, 6), homology_verified=True)
    assert rep.homology_status == "verified"
    rep = lower_bound(BoundQuery(hgraph(), 2, 6))
    assert rep.homology_status == "assumed"
