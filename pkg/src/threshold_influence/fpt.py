"""(k, l)-Influence with unanimity thresholds on bounded-degree graphs.

A vertex ``v`` realizes the pair ``(alpha, beta)`` when some non-empty
``V' ⊆ N^{2*alpha-1}[v]`` with ``|V'| <= alpha`` activates at least ``beta``
vertices and ``sigma[V']`` induces a connected subgraph; ``sigma[V']`` is the
realization. Under unanimity every activated vertex is adjacent only to
seeds, so a realization never leaves ``N^{2*alpha}[v]``; this is asserted on
every realization the solver builds.

The decision procedure guesses the number of components ``x`` of
``G[sigma[S]]`` and a split of ``(k, l)`` over them, tabulates realizing
vertices per pair, and searches for vertex-disjoint realizations. The
guesses are exhaustive loops; every "yes" carries a seed set that has been
re-propagated.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator, Optional

from .graph import Graph, mask_to_list
from .oracles import DEFAULT_CAP, DecisionResult, SearchTooLarge, count_subsets
from .propagation import closed_mask


class ContainmentError(AssertionError):
    """A realization escaped N^{2*alpha}[v]; the unanimity model is broken."""


@dataclass(frozen=True)
class RealizationQuery:
    v: int
    alpha: int
    beta: int

    def __post_init__(self) -> None:
        if self.alpha < 1:
            raise ValueError("alpha must be >= 1")
        if self.beta < 0:
            raise ValueError("beta must be >= 0")


@dataclass(frozen=True)
class RealizationWitness:
    anchor: int
    alpha: int
    seed_subset: tuple[int, ...]
    realization: frozenset[int]
    activated: int


@dataclass(frozen=True)
class PairProfile:
    pairs: tuple[tuple[int, int], ...]

    @property
    def x(self) -> int:
        return len(self.pairs)


@dataclass
class ProfileSearchState:
    counters: list[int]
    table: dict[tuple[int, int], bool]
    few: list[int]
    threshold: int


@dataclass
class FptStats:
    realizations_built: int = 0
    containment_checks: int = 0
    profiles_tried: int = 0
    final_checks: int = 0
    greedy_failures: int = 0


def _compositions(total: int, parts: int, minimum: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(minimum, total - minimum * (parts - 1) + 1):
        for rest in _compositions(total - first, parts - 1, minimum):
            yield (first,) + rest


def enumerate_pair_profiles(k: int, ell: int, x: int) -> list[PairProfile]:
    """All ordered splits with k_i >= 1, l_i >= 0, sum k_i = k, sum l_i = l,
    in ascending lexicographic order of the pair sequence."""
    if x < 1 or x > k:
        return []
    out = [
        PairProfile(tuple(zip(ks, ls)))
        for ks in _compositions(k, x, 1)
        for ls in _compositions(ell, x, 0)
    ]
    out.sort(key=lambda p: p.pairs)
    return out


class FptSolver:
    """Per-graph solver; realizations are cached across queries."""

    def __init__(self, graph: Graph, cap: int = DEFAULT_CAP):
        self.graph = graph
        self.cap = cap
        self.thr = graph.degrees()
        self.stats = FptStats()
        self._cache: dict[tuple[int, int], list[tuple[tuple[int, ...], int, int, int]]] = {}

    # -- realizing vertices -------------------------------------------------

    def _ordered_subsets(self, v: int, alpha: int) -> Iterator[tuple[int, ...]]:
        ball = mask_to_list(self.graph.ball(v, 2 * alpha - 1))
        total = count_subsets(len(ball), alpha)
        if total > self.cap:
            raise SearchTooLarge(total, self.cap, f"neighbourhood of {v}")
        others = [u for u in ball if u != v]
        for size in range(1, alpha + 1):
            for rest in combinations(others, size - 1):
                yield tuple(sorted((v,) + rest))
            yield from combinations(others, size)

    def realizations_at(self, v: int, alpha: int) -> list[tuple[tuple[int, ...], int, int, int]]:
        """All connected realizations anchored at ``v`` for budget ``alpha``.

        Entries are ``(seeds, seed_mask, activated_count, closed_mask)`` in
        search order: by size, subsets containing ``v`` first, then
        lexicographic.
        """
        key = (v, alpha)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        g = self.graph
        outer = g.ball(v, 2 * alpha)
        out = []
        for seeds in self._ordered_subsets(v, alpha):
            sm = 0
            for u in seeds:
                sm |= 1 << u
            cm = closed_mask(g.masks, self.thr, sm)
            if not g.is_connected_mask(cm):
                continue
            self.stats.containment_checks += 1
            if cm & ~outer:
                raise ContainmentError(
                    f"realization of {seeds} leaves N^{2 * alpha}[{v}]: {mask_to_list(cm & ~outer)}"
                )
            out.append((seeds, sm, (cm & ~sm).bit_count(), cm))
        self.stats.realizations_built += len(out)
        self._cache[key] = out
        return out

    def is_realizing_vertex(self, query: RealizationQuery) -> Optional[RealizationWitness]:
        for seeds, _sm, act, cm in self.realizations_at(query.v, query.alpha):
            if act >= query.beta:
                return RealizationWitness(query.v, query.alpha, seeds, frozenset(mask_to_list(cm)), act)
        return None

    def realizes(self, v: int, alpha: int, beta: int) -> bool:
        return any(act >= beta for _s, _m, act, _c in self.realizations_at(v, alpha))

    # -- connected case -----------------------------------------------------

    def solve_connected(self, k: int, ell: int) -> DecisionResult:
        t0 = time.perf_counter()
        if k == 0:
            return DecisionResult(False, None, 0, time.perf_counter() - t0)
        for v in range(self.graph.n):
            w = self.is_realizing_vertex(RealizationQuery(v, k, ell))
            if w is not None:
                return DecisionResult(True, w.seed_subset, v + 1, time.perf_counter() - t0,
                                      {"anchor": v, "realization": sorted(w.realization)})
        return DecisionResult(False, None, self.graph.n, time.perf_counter() - t0)

    # -- general case -------------------------------------------------------

    def profile_state(self, profile: PairProfile, k: int, few_threshold: Optional[int] = None) -> ProfileSearchState:
        g = self.graph
        x = profile.x
        if few_threshold is None:
            few_threshold = saturating_threshold(x, g.max_degree, k, self.cap)
        counters = [0] * x
        table = {}
        for v in range(g.n):
            for i, (ki, li) in enumerate(profile.pairs):
                ok = self.realizes(v, ki, li)
                table[(v, i)] = ok
                counters[i] += ok
        few = [i for i in range(x) if counters[i] <= few_threshold]
        return ProfileSearchState(counters, table, few, few_threshold)

    def _candidates(self, state: ProfileSearchState, i: int, pair: tuple[int, int], anchors: list[int]):
        ki, li = pair
        seen = set()
        out = []
        for v in anchors:
            if not state.table[(v, i)]:
                continue
            for _seeds, sm, act, cm in self.realizations_at(v, ki):
                if act >= li and sm not in seen:
                    seen.add(sm)
                    out.append((sm, cm))
        return out

    def _disjoint_choices(self, cands: list[list[tuple[int, int]]]) -> Iterator[list[tuple[int, int]]]:
        order = sorted(range(len(cands)), key=lambda i: len(cands[i]))
        chosen: list[Optional[tuple[int, int]]] = [None] * len(cands)

        def rec(pos: int, used: int) -> Iterator[list[tuple[int, int]]]:
            if pos == len(order):
                yield list(chosen)  # type: ignore[arg-type]
                return
            i = order[pos]
            for sm, cm in cands[i]:
                if cm & used:
                    continue
                chosen[i] = (sm, cm)
                yield from rec(pos + 1, used | cm)
            chosen[i] = None

        yield from rec(0, 0)

    def _greedy_place(self, state: ProfileSearchState, profile: PairProfile, rest: list[int], used: int):
        seeds = 0
        for j in rest:
            kj, lj = profile.pairs[j]
            placed = False
            for v in range(self.graph.n):
                if not state.table[(v, j)]:
                    continue
                for _s, sm, act, cm in self.realizations_at(v, kj):
                    if act >= lj and not cm & used:
                        seeds |= sm
                        used |= cm
                        placed = True
                        break
                if placed:
                    break
            if not placed:
                return None
        return seeds

    def try_profile(self, profile: PairProfile, k: int, ell: int,
                    few_threshold: Optional[int] = None) -> Optional[tuple[int, ProfileSearchState]]:
        """Seed mask of a verified solution following ``profile``, or None."""
        self.stats.profiles_tried += 1
        state = self.profile_state(profile, k, few_threshold)
        in_x = state.few
        # vertices not realizing any pair in X are dropped as anchors
        anchors = [v for v in range(self.graph.n) if any(state.table[(v, i)] for i in in_x)]
        cands = [self._candidates(state, i, profile.pairs[i], anchors) for i in in_x]
        total = 1
        for c in cands:
            total *= max(len(c), 1)
        if total > self.cap:
            raise SearchTooLarge(total, self.cap, "final realization check")
        rest = [j for j in range(profile.x) if j not in in_x]
        self.stats.final_checks += 1
        for choice in self._disjoint_choices(cands):
            seeds = 0
            used = 0
            for sm, cm in choice:
                seeds |= sm
                used |= cm
            extra = self._greedy_place(state, profile, rest, used)
            if extra is None:
                self.stats.greedy_failures += 1
                continue
            seeds |= extra
            if seeds.bit_count() <= k and (closed_mask(self.graph.masks, self.thr, seeds) & ~seeds).bit_count() >= ell:
                return seeds, state
        return None

    def decide(self, k: int, ell: int, few_threshold: Optional[int] = None) -> DecisionResult:
        """Decision for graphs without isolated vertices; see :func:`solve_influence_fpt`."""
        t0 = time.perf_counter()
        g = self.graph
        if ell == 0:
            return DecisionResult(True, (), 0, time.perf_counter() - t0, {"trivial": "ell=0"})
        if k == 0 or g.n == 0 or ell > k * g.max_degree:
            return DecisionResult(False, None, 0, time.perf_counter() - t0, {"pruned": "k*Delta bound"})
        failed: set[tuple[tuple[int, int], ...]] = set()
        tried = 0
        for x in range(1, k + 1):
            for profile in enumerate_pair_profiles(k, ell, x):
                # the search is symmetric in pair order, so a failed multiset stays failed
                key = tuple(sorted(profile.pairs))
                if key in failed:
                    continue
                tried += 1
                hit = self.try_profile(profile, k, ell, few_threshold)
                if hit is None:
                    failed.add(key)
                    continue
                seeds, state = hit
                info = {
                    "x": x,
                    "profile": [list(p) for p in profile.pairs],
                    "few_pairs": state.few,
                    "counters": state.counters,
                }
                return DecisionResult(True, tuple(mask_to_list(seeds)), tried, time.perf_counter() - t0, info)
        return DecisionResult(False, None, tried, time.perf_counter() - t0)


def saturating_threshold(x: int, max_degree: int, k: int, cap: int) -> int:
    """2 * x * Delta^(4k), clamped to ``cap``."""
    value = 2 * x
    for _ in range(4 * k):
        value *= max_degree
        if value > cap:
            return cap
    return min(value, cap)


# ---------------------------------------------------------------------------
# functional entry points
# ---------------------------------------------------------------------------


def is_realizing_vertex(g: Graph, query: RealizationQuery, cap: int = DEFAULT_CAP) -> Optional[RealizationWitness]:
    return FptSolver(g, cap).is_realizing_vertex(query)


def solve_connected_influence(g: Graph, k: int, ell: int, cap: int = DEFAULT_CAP) -> DecisionResult:
    return FptSolver(g, cap).solve_connected(k, ell)


@dataclass
class FptRunner:
    """Strips isolated vertices once and answers many (k, l) queries on one graph."""

    graph: Graph
    cap: int = DEFAULT_CAP
    core_vertices: list[int] = field(init=False)
    isolated: int = field(init=False)
    solver: FptSolver = field(init=False)

    def __post_init__(self) -> None:
        self.core_vertices = [v for v in range(self.graph.n) if self.graph.degree(v) > 0]
        self.isolated = self.graph.n - len(self.core_vertices)
        self.solver = FptSolver(self.graph.induced(self.core_vertices), self.cap)

    def decide(self, k: int, ell: int, few_threshold: Optional[int] = None) -> DecisionResult:
        # isolated vertices have threshold 0 and fire unseeded, so they are free
        res = self.solver.decide(k, max(0, ell - self.isolated), few_threshold)
        if res.answer:
            res.witness = tuple(self.core_vertices[i] for i in res.witness or ())
        res.info["isolated"] = self.isolated
        return res


def solve_influence_fpt(g: Graph, k: int, ell: int, cap: int = DEFAULT_CAP,
                        few_threshold: Optional[int] = None) -> DecisionResult:
    """Decide (k, l)-Influence under unanimity thresholds.

    ``few_threshold`` overrides the 2*x*Delta^(4k) cut between pairs with few
    and many realizing vertices; it exists to exercise the greedy placement
    of "many" pairs on small graphs.
    """
    return FptRunner(g, cap).decide(k, ell, few_threshold)
