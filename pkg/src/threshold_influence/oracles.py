"""Exhaustive solvers used as ground truth.

All searches walk seed sets by increasing size and, within a size, in
lexicographic order, and refuse to start when the number of candidate sets
exceeds the exploration cap.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Any, Optional

from .graph import UNANIMITY, Graph, Instance
from .propagation import closed_mask

DEFAULT_CAP = 10**7


class SearchTooLarge(RuntimeError):
    """The candidate space exceeds the configured exploration cap."""

    def __init__(self, candidates: int, cap: int, what: str = "search"):
        super().__init__(f"{what} too large: {candidates} candidate sets exceed cap {cap}")
        self.candidates = candidates
        self.cap = cap


@dataclass
class SolveResult:
    seeds: tuple[int, ...]
    open_value: int
    closed_value: int
    exact: bool
    explored: int = 0
    elapsed: float = 0.0
    info: dict[str, Any] = field(default_factory=dict)

    @property
    def value(self) -> int:
        return self.open_value


@dataclass
class DecisionResult:
    answer: bool
    witness: Optional[tuple[int, ...]] = None
    explored: int = 0
    elapsed: float = 0.0
    info: dict[str, Any] = field(default_factory=dict)


@dataclass
class ClassicResult:
    problem: str
    value: int
    witness: Optional[tuple[int, ...]]
    explored: int = 0


def count_subsets(n: int, k: int) -> int:
    return sum(comb(n, j) for j in range(min(k, n) + 1))


def guard(n: int, k: int, cap: int, what: str = "search") -> int:
    total = count_subsets(n, k)
    if total > cap:
        raise SearchTooLarge(total, cap, what)
    return total


def _subsets(n: int, k: int):
    for size in range(min(k, n) + 1):
        yield from combinations(range(n), size)


def _mask(seeds) -> int:
    m = 0
    for v in seeds:
        m |= 1 << v
    return m


def _solve_max(inst: Instance, closed: bool, cap: int) -> SolveResult:
    t0 = time.perf_counter()
    g = inst.graph
    guard(g.n, inst.k, cap)
    masks, thr = g.masks, inst.thresholds.values
    best_val, best_seeds, best_closed = -1, (), 0
    explored = 0
    for seeds in _subsets(g.n, inst.k):
        explored += 1
        sm = _mask(seeds)
        cl = closed_mask(masks, thr, sm).bit_count()
        val = cl if closed else cl - len(seeds)
        if val > best_val or (val == best_val and seeds < best_seeds):
            best_val, best_seeds, best_closed = val, seeds, cl
    return SolveResult(
        best_seeds,
        best_closed - len(best_seeds),
        best_closed,
        exact=True,
        explored=explored,
        elapsed=time.perf_counter() - t0,
    )


def solve_max_open_exact(inst: Instance, cap: int = DEFAULT_CAP) -> SolveResult:
    """Maximise |sigma(S)| over |S| <= k; ties go to the lexicographically smallest S."""
    return _solve_max(inst, closed=False, cap=cap)


def solve_max_closed_exact(inst: Instance, cap: int = DEFAULT_CAP) -> SolveResult:
    """Maximise |sigma[S]| over |S| <= k; ties go to the lexicographically smallest S."""
    return _solve_max(inst, closed=True, cap=cap)


def open_upper_bound(inst: Instance) -> Optional[int]:
    """k * max-degree plus the free isolated activations, for unanimity thresholds."""
    if inst.thresholds.scheme != UNANIMITY:
        return None
    g = inst.graph
    return inst.k * g.max_degree + len(g.isolated())


def decide_influence(inst: Instance, cap: int = DEFAULT_CAP) -> DecisionResult:
    """Is there |S| <= k with |sigma(S)| >= ell? The witness is the first hit in
    (size, lexicographic) order, i.e. a smallest one."""
    if inst.ell is None:
        raise ValueError("decision needs ell")
    t0 = time.perf_counter()
    ell = inst.ell
    bound = open_upper_bound(inst)
    if bound is not None and ell > bound:
        return DecisionResult(False, None, 0, time.perf_counter() - t0, {"pruned": "k*Delta bound"})
    g = inst.graph
    guard(g.n, inst.k, cap)
    masks, thr = g.masks, inst.thresholds.values
    explored = 0
    for seeds in _subsets(g.n, inst.k):
        explored += 1
        sm = _mask(seeds)
        if (closed_mask(masks, thr, sm) & ~sm).bit_count() >= ell:
            return DecisionResult(True, seeds, explored, time.perf_counter() - t0)
    return DecisionResult(False, None, explored, time.perf_counter() - t0)


# ---------------------------------------------------------------------------
# classic problems
# ---------------------------------------------------------------------------

DOMINATING_SET = "dominating-set"
CLIQUE = "clique"
VERTEX_COVER = "vertex-cover"
DENSEST = "densest-k-subgraph"
CLASSIC_PROBLEMS = (DOMINATING_SET, CLIQUE, VERTEX_COVER, DENSEST)


def is_dominating_set(g: Graph, vs) -> bool:
    covered = set(vs)
    for v in vs:
        covered.update(g.neighbors(v))
    return len(covered) == g.n


def is_clique(g: Graph, vs) -> bool:
    vs = list(vs)
    return all(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def is_vertex_cover(g: Graph, vs) -> bool:
    s = set(vs)
    return all(u in s or v in s for u, v in g.edges)


def is_independent_set(g: Graph, vs) -> bool:
    vs = list(vs)
    return not any(g.has_edge(u, v) for i, u in enumerate(vs) for v in vs[i + 1 :])


def induced_edge_count(g: Graph, vs) -> int:
    s = set(vs)
    return sum(1 for u, v in g.edges if u in s and v in s)


def classic_brute_force(problem: str, g: Graph, k: int, cap: int = DEFAULT_CAP) -> ClassicResult:
    """Exact answer for one of the classical source problems.

    dominating-set / clique: value is 1 (yes) or 0 (no) for size ``k``;
    vertex-cover: minimum cover size (``k`` ignored);
    densest-k-subgraph: maximum number of edges induced by ``k`` vertices.
    """
    n = g.n
    if problem == VERTEX_COVER:
        guard(n, n, cap, "vertex-cover search")
        explored = 0
        for size in range(n + 1):
            for vs in combinations(range(n), size):
                explored += 1
                if is_vertex_cover(g, vs):
                    return ClassicResult(problem, size, vs, explored)
        raise AssertionError("V is always a vertex cover")
    if not 0 <= k <= n:
        raise ValueError(f"k={k} outside [0, {n}]")
    total = comb(n, k)
    if total > cap:
        raise SearchTooLarge(total, cap, f"{problem} search")
    explored = 0
    if problem == DOMINATING_SET:
        for vs in combinations(range(n), k):
            explored += 1
            if is_dominating_set(g, vs):
                return ClassicResult(problem, 1, vs, explored)
        return ClassicResult(problem, 0, None, explored)
    if problem == CLIQUE:
        for vs in combinations(range(n), k):
            explored += 1
            if is_clique(g, vs):
                return ClassicResult(problem, 1, vs, explored)
        return ClassicResult(problem, 0, None, explored)
    if problem == DENSEST:
        best, witness = -1, None
        for vs in combinations(range(n), k):
            explored += 1
            e = induced_edge_count(g, vs)
            if e > best:
                best, witness = e, vs
        return ClassicResult(problem, best, witness, explored)
    raise ValueError(f"unknown classic problem {problem!r}")


def max_independent_set_brute(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Complement of a minimum vertex cover."""
    cover = set(classic_brute_force(VERTEX_COVER, g, 0, cap).witness or ())
    return tuple(v for v in range(g.n) if v not in cover)


def result_record(problem: str, inst: Instance, value, witness, explored: int, elapsed: float, **extra) -> dict:
    """Flat record with the fields every CLI command reports."""
    rec = {
        "problem": problem,
        "n": inst.graph.n,
        "m": inst.graph.m,
        "k": inst.k,
        "ell": inst.ell,
        "value": value,
        "witness": sorted(witness) if witness is not None else None,
        "explored": explored,
        "elapsed_ms": round(elapsed * 1000, 3),
    }
    rec.update(extra)
    return rec
