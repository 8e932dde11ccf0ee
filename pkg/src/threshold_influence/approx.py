"""Approximation algorithms for unanimity thresholds.

Every function here assigns unanimity thresholds to the graph it is given.
"""

from __future__ import annotations

import math
import time
from bisect import bisect_left
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .graph import Graph, false_twin_classes, mask_to_list, unanimity_instance
from .oracles import DEFAULT_CAP, SolveResult, solve_max_open_exact
from .propagation import closed_mask

OpenSolver = Callable[[Graph, int], SolveResult]


def _evaluate(g: Graph, seeds: Sequence[int]) -> tuple[int, int]:
    sm = 0
    for v in seeds:
        sm |= 1 << v
    closed = closed_mask(g.masks, g.degrees(), sm).bit_count()
    return closed - len(seeds), closed


def twin_approx_open(g: Graph, k: int) -> SolveResult:
    """Seed the neighbourhood of the largest false-twin class of degree in [1, k].

    The class is chosen by size, then smaller common degree, then smallest
    member. Its vertices all fire in round one, and any seed set of size
    at most k activates at most 2^k such classes, hence the 2^k ratio.
    """
    t0 = time.perf_counter()
    best = None
    classes = false_twin_classes(g).classes
    for cls in classes:
        if not 1 <= cls.degree <= k:
            continue
        key = (-len(cls.members), cls.degree, cls.members[0])
        if best is None or key < best[0]:
            best = (key, cls)
    seeds = best[1].neighborhood if best else ()
    open_v, closed_v = _evaluate(g, seeds)
    info = {"class": list(best[1].members) if best else [], "class_degree": best[1].degree if best else None}
    return SolveResult(tuple(seeds), open_v, closed_v, exact=False, explored=len(classes),
                       elapsed=time.perf_counter() - t0, info=info)


def exact_open(g: Graph, k: int, cap: int = DEFAULT_CAP) -> SolveResult:
    return solve_max_open_exact(unanimity_instance(g, k), cap)


def closed_from_open(g: Graph, k: int, open_solver: OpenSolver) -> SolveResult:
    """Run an open-objective solver, pad its seeds to exactly ``k`` and report
    the closed objective.

    Padding prefers vertices outside sigma[S] (ascending index) so that the
    closed value is at least ``min(n, k + open_value)`` of the unpadded
    solution.
    """
    t0 = time.perf_counter()
    base = open_solver(g, k)
    seeds = set(base.seeds)
    if len(seeds) < k:
        sm = 0
        for v in seeds:
            sm |= 1 << v
        active = closed_mask(g.masks, g.degrees(), sm)
        outside = [v for v in range(g.n) if not (active >> v) & 1]
        inside = [v for v in range(g.n) if (active >> v) & 1 and v not in seeds]
        for v in outside + inside:
            if len(seeds) == k:
                break
            seeds.add(v)
    seeds_t = tuple(sorted(seeds))
    open_v, closed_v = _evaluate(g, seeds_t)
    info = dict(base.info)
    info["base_open_value"] = base.open_value
    return SolveResult(seeds_t, open_v, closed_v, exact=False, explored=base.explored,
                       elapsed=time.perf_counter() - t0, info=info)


def bounded_degree_approx(g: Graph, k: int) -> SolveResult:
    """Greedy disjoint-neighbourhood selection.

    Repeatedly picks a positive-degree vertex that is neither active nor
    adjacent to an earlier pick and whose not-yet-seeded neighbourhood fits
    the remaining budget (smallest residual first, ties by index), then
    seeds that residual. Picked vertices are never seeded later, so each
    pick stays activated and the value is at least the number of picks.
    """
    t0 = time.perf_counter()
    if g.max_degree < 1:
        open_v, closed_v = _evaluate(g, ())
        return SolveResult((), open_v, closed_v, exact=False, info={"picks": 0})
    masks, thr = g.masks, g.degrees()
    seed_mask = 0
    picked_mask = 0
    budget = k
    picks = []
    while True:
        active = closed_mask(masks, thr, seed_mask)
        best = None
        for v in range(g.n):
            if not masks[v] or (active >> v) & 1 or masks[v] & picked_mask:
                continue
            residual = masks[v] & ~seed_mask
            size = residual.bit_count()
            if size <= budget and (best is None or (size, v) < best[:2]):
                best = (size, v, residual)
        if best is None:
            break
        size, v, residual = best
        seed_mask |= residual
        picked_mask |= 1 << v
        budget -= size
        picks.append(v)
    seeds = tuple(mask_to_list(seed_mask))
    open_v, closed_v = _evaluate(g, seeds)
    return SolveResult(seeds, open_v, closed_v, exact=False, explored=len(picks),
                       elapsed=time.perf_counter() - t0,
                       info={"picks": len(picks), "picked": picks, "guarantee": k // g.max_degree})


# ---------------------------------------------------------------------------
# ratio functions and the fpt switch
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class RatioSpec:
    """A non-decreasing ratio function over positive integers.

    Either a named preset (``log2``, ``sqrt``, ``linear``) or a tabulated
    sequence ``table[i] = r(i + 1)``; tabulated functions are extended by
    their last value.
    """

    name: str
    table: Optional[tuple[float, ...]] = None

    PRESETS = ("log2", "sqrt", "linear")

    def __post_init__(self) -> None:
        if self.table is None and self.name not in self.PRESETS:
            raise ValueError(f"unknown ratio preset {self.name!r}; expected one of {self.PRESETS}")
        if self.table is not None:
            if not self.table:
                raise ValueError("tabulated ratio needs at least one value")
            if any(b < a for a, b in zip(self.table, self.table[1:])):
                raise ValueError("tabulated ratio must be non-decreasing")

    @classmethod
    def tabulated(cls, values: Sequence[float]) -> RatioSpec:
        return cls("table", tuple(float(v) for v in values))

    def __call__(self, n: int) -> float:
        if n < 1:
            raise ValueError("ratio functions are defined on positive integers")
        if self.table is not None:
            return self.table[min(n, len(self.table)) - 1]
        if self.name == "log2":
            return math.log2(n)
        if self.name == "sqrt":
            return math.sqrt(n)
        return float(n)

    def inverse(self, y: float, hi: int = 1 << 62) -> Optional[int]:
        """Smallest n >= 1 with r(n) >= y, or None if r never reaches y."""
        if self.table is not None:
            i = bisect_left(self.table, y)
            return i + 1 if i < len(self.table) else None
        if self(hi) < y:
            return None
        lo = 1
        while lo < hi:
            mid = (lo + hi) // 2
            if self(mid) >= y:
                hi = mid
            else:
                lo = mid + 1
        return lo


def fpt_ratio_approx(g: Graph, k: int, ratio: RatioSpec, cap: int = DEFAULT_CAP) -> SolveResult:
    """r(n)-approximation: use the 2^k twin algorithm when 2^k <= r(n), otherwise
    solve exactly (then n is small relative to k)."""
    n = max(g.n, 1)
    if 2**k <= ratio(n):
        res = twin_approx_open(g, k)
        branch = "twin"
    else:
        res = exact_open(g, k, cap)
        branch = "brute-force"
    res.info["branch"] = branch
    res.info["ratio_at_n"] = ratio(n)
    return res


# ---------------------------------------------------------------------------
# independent set / vertex cover bridges
# ---------------------------------------------------------------------------


def max_independent_set_via_influence(g: Graph, cap: int = DEFAULT_CAP) -> tuple[int, ...]:
    """Best sigma(S*) over budgets 1..n; under unanimity that set is a maximum
    independent set."""
    best: tuple[int, ...] = ()
    best_val = -1
    for k in range(1, g.n + 1):
        res = exact_open(g, k, cap)
        if res.open_value > best_val:
            sm = 0
            for v in res.seeds:
                sm |= 1 << v
            best = tuple(mask_to_list(closed_mask(g.masks, g.degrees(), sm) & ~sm))
            best_val = res.open_value
    return best


def vertex_cover_from_influence(g: Graph, seeds: Sequence[int]) -> tuple[int, ...]:
    """V minus sigma(S); a vertex cover because sigma(S) is independent."""
    sm = 0
    for v in seeds:
        sm |= 1 << v
    activated = closed_mask(g.masks, g.degrees(), sm) & ~sm
    return tuple(v for v in range(g.n) if not (activated >> v) & 1)
