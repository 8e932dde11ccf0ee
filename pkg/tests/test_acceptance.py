"""Acceptance suite: twelve exhaustive or sampled checks with fixed budgets.

Each test records a PASS/FAIL line that the session prints at the end
(see ``conftest.py``); the assertion then enforces the same verdict.
"""

import itertools
import random
import time
from math import comb

import pytest

from helpers import G5
from threshold_influence.approx import (
    bounded_degree_approx,
    exact_open,
    max_independent_set_via_influence,
    twin_approx_open,
    vertex_cover_from_influence,
)
from threshold_influence.catalog import disjoint_unions, graphs_upto
from threshold_influence.fpt import ContainmentError, FptRunner
from threshold_influence.graph import Graph, ThresholdAssignment, assign_thresholds, unanimity_instance
from threshold_influence.oracles import (
    DOMINATING_SET,
    VERTEX_COVER,
    classic_brute_force,
    decide_influence,
    is_dominating_set,
    is_vertex_cover,
)
from threshold_influence.propagation import closed_mask, propagate_rounds
from threshold_influence.reductions import majority_hardness_instance, verify_reduction


def _finish(acceptance, number, title, violations, checked, budget, t0, unit="violations"):
    elapsed = time.perf_counter() - t0
    passed = violations == 0 and elapsed < budget
    detail = f"{violations} {unit} over {checked} checks, budget {budget:.0f}s"
    acceptance(number, title, passed, detail, elapsed)
    assert violations == 0, detail
    assert elapsed < budget, f"took {elapsed:.1f}s, budget {budget}s"


def _random_graph(rng, n_max=10):
    n = rng.randint(1, n_max)
    p = rng.random()
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def test_criterion_01_one_step_unanimity(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for g in graphs_upto(8, connected=True):
        masks, thr = g.masks, g.degrees()
        positive = [v for v in range(g.n) if masks[v]]
        for size in range(4):
            for seeds in itertools.combinations(positive, size):
                sm = sum(1 << v for v in seeds)
                rounds = [r for r in propagate_rounds(masks, thr, sm) if r]
                act = rounds[0] if rounds else 0
                independent = not any(masks[v] & act for v in seeds_of(act))
                checked += 1
                if len(rounds) > 1 or act & sm or not independent:
                    bad += 1
    _finish(acceptance, 1, "one-step unanimity", bad, checked, 120, t0)


def seeds_of(mask):
    v = 0
    while mask:
        if mask & 1:
            yield v
        mask >>= 1
        v += 1


def test_criterion_02_twin_ratio(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for g in graphs_upto(7, connected=True):
        for k in (1, 2, 3):
            res = twin_approx_open(g, k)
            opt = exact_open(g, k).open_value
            checked += 1
            if 2**k * res.open_value < opt or len(res.seeds) > k:
                bad += 1
    _finish(acceptance, 2, "twin approximation within 2^k", bad, checked, 300, t0)


def test_criterion_03_closed_open_identity(acceptance):
    t0 = time.perf_counter()
    rng = random.Random(20240603)
    bad = 0
    for i in range(1000):
        g = _random_graph(rng)
        scheme = i % 3
        if scheme == 0:
            thr = assign_thresholds(g, "unanimity")
        elif scheme == 1:
            thr = assign_thresholds(g, "majority")
        else:
            thr = ThresholdAssignment(tuple(rng.randint(0, max(1, d)) for d in g.degrees()))
        k = rng.randint(0, g.n)
        seeds = rng.sample(range(g.n), k)
        sm = sum(1 << v for v in seeds)
        closed = closed_mask(g.masks, thr.values, sm)
        if closed.bit_count() != k + (closed & ~sm).bit_count():
            bad += 1
    _finish(acceptance, 3, "closed = k + open", bad, 1000, 60, t0)


@pytest.mark.xfail(strict=True, reason="threshold-0 isolated vertices fire for free, so opt can exceed k*Delta; "
                                       "the bound holds as k*Delta + #isolated (see test_approx)")
def test_criterion_04_kdelta_bound(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    with_isolated = greedy_bad = 0
    for g in graphs_upto(8, max_degree=3):
        delta = g.max_degree
        for k in range(4):
            opt = exact_open(g, k).open_value
            checked += 1
            if opt > k * delta:
                bad += 1
                with_isolated += bool(g.isolated())
            if delta:
                res = bounded_degree_approx(g, k)
                if res.info["picks"] >= k // delta and res.open_value < k // delta:
                    greedy_bad += 1
    elapsed = time.perf_counter() - t0
    violations = bad + greedy_bad
    detail = (f"{bad} instances with opt > k*Delta ({with_isolated} of them have isolated vertices), "
              f"{greedy_bad} greedy violations over {checked} checks, budget 300s")
    acceptance(4, "k*Delta bound and greedy floor", violations == 0 and elapsed < 300, detail, elapsed)
    assert elapsed < 300
    assert violations == 0, detail


@pytest.fixture(scope="module")
def fpt_sweep():
    """One run over the bounded-degree catalog shared by criteria 5 and 12."""
    t0 = time.perf_counter()
    connected = list(graphs_upto(7, connected=True, max_degree=3))
    small = [g for g in connected if g.n <= 5]
    corpus = connected + list(disjoint_unions(small))
    out = {"disagree": 0, "unverified": 0, "checked": 0, "containment_violations": 0,
           "containment_checks": 0, "graphs": len(corpus)}
    for g in corpus:
        runner = FptRunner(g)
        thr = g.degrees()
        for k in range(4):
            for ell in range(k * g.max_degree + 1):
                out["checked"] += 1
                try:
                    res = runner.decide(k, ell)
                except ContainmentError:
                    out["containment_violations"] += 1
                    continue
                oracle = decide_influence(unanimity_instance(g, k, ell))
                if res.answer != oracle.answer:
                    out["disagree"] += 1
                if res.answer:
                    sm = sum(1 << v for v in res.witness)
                    if len(res.witness) > k or (closed_mask(g.masks, thr, sm) & ~sm).bit_count() < ell:
                        out["unverified"] += 1
        out["containment_checks"] += runner.solver.stats.containment_checks
    out["elapsed"] = time.perf_counter() - t0
    return out


def test_criterion_05_fpt_oracle_equivalence(acceptance, fpt_sweep):
    t0 = time.perf_counter() - fpt_sweep["elapsed"]
    bad = fpt_sweep["disagree"] + fpt_sweep["unverified"] + fpt_sweep["containment_violations"]
    _finish(acceptance, 5, f"bounded-degree algorithm = oracle ({fpt_sweep['graphs']} graphs)",
            bad, fpt_sweep["checked"], 900, t0, unit="disagreements/unverified")


def test_criterion_06_basic_reduction(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for g in graphs_upto(6, connected=True):
        for k in range(4):
            rep = verify_reduction("basic", g, k)
            checked += 1
            if not rep.agree:
                bad += 1
    _finish(acceptance, 6, "dominating set <=> full activation", bad, checked, 300, t0, unit="disagreements")


def test_criterion_07_clique_reduction(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for g in graphs_upto(6):
        for k in (2, 3):
            rep = verify_reduction("clique", g, k)
            checked += 1
            if not rep.agree or rep.params["ell"] != (k + 1) * comb(k, 2):
                bad += 1
    _finish(acceptance, 7, "k-clique <=> (k, (k+1)C(k,2))-influence", bad, checked, 300, t0, unit="disagreements")


def test_criterion_08_dks_value(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for g in graphs_upto(5):
        for k in range(4):
            rep = verify_reduction("dks", g, k)
            checked += 1
            if not rep.agree:
                bad += 1
    _finish(acceptance, 8, "densest-k value = open optimum", bad, checked, 300, t0, unit="mismatches")


def test_criterion_09_independent_set_bridge(acceptance):
    t0 = time.perf_counter()
    bad = checked = 0
    for g in graphs_upto(7, connected=True):
        mis = max_independent_set_via_influence(g)
        checked += 1
        if len(mis) != g.n - classic_brute_force(VERTEX_COVER, g, 0).value:
            bad += 1
    _finish(acceptance, 9, "independent set via influence", bad, checked, 300, t0, unit="mismatches")


def test_criterion_10_vertex_cover_extraction(acceptance):
    t0 = time.perf_counter()
    rng = random.Random(7741)
    bad = 0
    for _ in range(500):
        g = _random_graph(rng, 12)
        seeds = rng.sample(range(g.n), rng.randint(0, g.n))
        if not is_vertex_cover(g, vertex_cover_from_influence(g, seeds)):
            bad += 1
    _finish(acceptance, 10, "V minus sigma(S) is a vertex cover", bad, 500, 60, t0)


def test_criterion_11_majority_yes_side(acceptance):
    t0 = time.perf_counter()
    bad = 0
    ds = classic_brute_force(DOMINATING_SET, G5, 2)
    assert ds.value == 1 and is_dominating_set(G5, ds.witness)
    for L in (1, 2, 3):
        out = majority_hardness_instance(G5, 2, L)
        inst = out.instance
        seeds = out.forward_map(ds.witness)
        assert out.params["hub"] in seeds
        active = closed_mask(inst.graph.masks, inst.thresholds.values, sum(1 << v for v in seeds))
        grid = out.vertices_labelled("grid(")
        pend = out.vertices_labelled("pending(grid(")
        reached = sum((active >> v) & 1 for v in grid + pend)
        if len(grid) != G5.n * L or len(pend) != G5.n**2 or reached != G5.n * L + G5.n**2:
            bad += 1
    _finish(acceptance, 11, "majority construction yes-side", bad, 3, 60, t0)


def test_criterion_12_realization_containment(acceptance, fpt_sweep):
    t0 = time.perf_counter()
    checks = fpt_sweep["containment_checks"]
    assert checks > 0
    _finish(acceptance, 12, f"realizations stay within N^(2a)[v] ({checks} realizations)",
            fpt_sweep["containment_violations"], checks, 900, t0)
