import math
import random

import pytest
from hypothesis import given, strategies as st

from helpers import C4, K4, P3, STAR3, graphs
from threshold_influence.approx import (
    RatioSpec,
    bounded_degree_approx,
    closed_from_open,
    exact_open,
    fpt_ratio_approx,
    max_independent_set_via_influence,
    twin_approx_open,
    vertex_cover_from_influence,
)
from threshold_influence.catalog import graphs_upto
from threshold_influence.graph import Graph, assign_thresholds, UNANIMITY
from threshold_influence.oracles import VERTEX_COVER, classic_brute_force, is_independent_set, is_vertex_cover
from threshold_influence.propagation import sigma_closed, sigma_open


def test_twin_examples():
    c4 = twin_approx_open(C4, 2)
    assert c4.info["class"] == [0, 2] and c4.seeds == (1, 3) and c4.open_value == 2
    star = twin_approx_open(STAR3, 1)
    assert star.seeds == (0,) and star.open_value == 3 == exact_open(STAR3, 1).open_value
    k4 = twin_approx_open(K4, 1)
    assert k4.open_value == 0 == exact_open(K4, 1).open_value


def test_twin_tie_break_prefers_smaller_degree():
    # classes {0,1} (N={2}) and {3,4} (N={5,6}) have equal size
    g = Graph(7, [(0, 2), (1, 2), (3, 5), (3, 6), (4, 5), (4, 6)])
    assert twin_approx_open(g, 2).info["class"] == [0, 1]


def test_twin_ignores_isolated_class():
    g = Graph(5, [(0, 1)])  # isolated 2, 3, 4 form the largest twin class
    res = twin_approx_open(g, 1)
    assert res.info["class_degree"] == 1
    assert res.open_value == 4  # one leaf plus the three free isolated vertices


@given(graphs(max_n=7), st.integers(0, 3))
def test_twin_ratio_and_budget(g, k):
    res = twin_approx_open(g, k)
    assert len(res.seeds) <= k
    assert 2**k * res.open_value >= exact_open(g, k).open_value


def test_closed_from_open_examples():
    assert closed_from_open(C4, 2, twin_approx_open).closed_value == 4
    assert closed_from_open(C4, 0, twin_approx_open).closed_value == 0
    assert closed_from_open(P3, 1, exact_open).closed_value == 3


@given(graphs(max_n=7), st.integers(0, 4))
def test_closed_from_open_consistent(g, k):
    k = min(k, g.n)
    res = closed_from_open(g, k, twin_approx_open)
    thr = assign_thresholds(g, UNANIMITY)
    assert len(res.seeds) == k
    assert len(sigma_closed(g, thr, res.seeds)) == res.closed_value
    # padding goes outside sigma[S] first, so it only stops gaining once everything is active
    assert res.closed_value >= min(g.n, k + res.info["base_open_value"])


def test_greedy_examples():
    matching = Graph(6, [(0, 1), (2, 3), (4, 5)])
    res = bounded_degree_approx(matching, 2)
    assert res.info["picks"] == 2 and res.open_value == 2
    c4 = bounded_degree_approx(C4, 2)
    assert c4.info["picked"] == [0] and c4.seeds == (1, 3) and c4.open_value == 2
    star = bounded_degree_approx(STAR3, 2)
    assert star.info["guarantee"] == 0 and star.seeds == (0,) and star.open_value >= 1


@given(graphs(max_n=8), st.integers(0, 4))
def test_greedy_keeps_its_picks(g, k):
    res = bounded_degree_approx(g, k)
    assert len(res.seeds) <= k
    if g.max_degree:
        act = sigma_open(g, assign_thresholds(g, UNANIMITY), res.seeds)
        assert set(res.info["picked"]) <= act
        assert res.open_value >= min(k // g.max_degree, res.info["picks"])


def test_ratio_presets_and_inverse():
    assert RatioSpec("log2")(4) == 2.0
    assert RatioSpec("sqrt")(9) == 3.0
    assert RatioSpec("linear")(5) == 5.0
    assert RatioSpec("log2").inverse(3) == 8
    assert RatioSpec("sqrt").inverse(2.5) == 7
    tab = RatioSpec.tabulated([1, 1, 2, 4])
    assert tab(3) == 2 and tab(100) == 4
    assert tab.inverse(2) == 3 and tab.inverse(5) is None
    with pytest.raises(ValueError):
        RatioSpec("cube")
    with pytest.raises(ValueError):
        RatioSpec.tabulated([3, 1])


@given(st.sampled_from(["log2", "sqrt", "linear"]), st.floats(0.5, 40))
def test_ratio_inverse_is_smallest(name, y):
    r = RatioSpec(name)
    n = r.inverse(y)
    assert r(n) >= y
    assert n == 1 or r(n - 1) < y


def test_fpt_ratio_branches():
    res = fpt_ratio_approx(C4, 1, RatioSpec("linear"))
    assert res.info["branch"] == "twin"
    res = fpt_ratio_approx(K4, 3, RatioSpec("log2"))
    assert res.info["branch"] == "brute-force" and res.exact
    assert res.open_value == exact_open(K4, 3).open_value
    assert fpt_ratio_approx(C4, 0, RatioSpec("log2")).open_value == 0


@given(graphs(max_n=7), st.integers(0, 3), st.sampled_from(["log2", "sqrt", "linear"]))
def test_fpt_ratio_guarantee(g, k, name):
    r = RatioSpec(name)
    res = fpt_ratio_approx(g, k, r)
    opt = exact_open(g, k).open_value
    if res.info["branch"] == "brute-force":
        assert res.open_value == opt
    else:
        assert r(max(g.n, 1)) * res.open_value >= opt


def test_mis_examples():
    assert max_independent_set_via_influence(C4) == (1, 3)
    assert max_independent_set_via_influence(P3) == (0, 2)
    assert max_independent_set_via_influence(Graph(1)) == (0,)


def test_mis_matches_vertex_cover_exhaustive():
    for g in graphs_upto(7):
        mis = max_independent_set_via_influence(g)
        assert is_independent_set(g, mis)
        assert len(mis) == g.n - classic_brute_force(VERTEX_COVER, g, 0).value


def test_vertex_cover_examples():
    assert vertex_cover_from_influence(C4, (1, 3)) == (1, 3)
    assert vertex_cover_from_influence(P3, (1,)) == (1,)
    g = Graph(3, [(0, 1), (1, 2)])
    assert vertex_cover_from_influence(g, ()) == (0, 1, 2)


@given(graphs(max_n=9), st.data())
def test_vertex_cover_always_covers(g, data):
    seeds = data.draw(st.lists(st.integers(0, g.n - 1), unique=True))
    assert is_vertex_cover(g, vertex_cover_from_influence(g, seeds))


def test_kdelta_bound_counts_free_isolated_activations():
    for g in graphs_upto(8, max_degree=3):
        iso = len(g.isolated())
        for k in range(4):
            opt = exact_open(g, k).open_value
            assert opt <= k * g.max_degree + iso
            if not iso:
                assert opt <= k * g.max_degree
