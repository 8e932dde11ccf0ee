"""Synchronous threshold activation.

Round 0 activates the seeds. Round ``r+1`` activates every inactive vertex
with at least ``thr(v)`` neighbours active after round ``r``; all updates in a
round are computed from the same state. The process stops at the first round
that activates nothing. Vertices with threshold 0 therefore fire in round 1
even without seeds.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .graph import Graph, ThresholdAssignment, list_to_mask, mask_to_list

Thresholds = Union[ThresholdAssignment, Sequence[int]]


@dataclass(frozen=True)
class ActivationTrace:
    seeds: frozenset[int]
    rounds: tuple[frozenset[int], ...]
    final_closed: frozenset[int]

    @property
    def final_open(self) -> frozenset[int]:
        return self.final_closed - self.seeds

    def dump(self) -> str:
        """One line per round with the newly activated vertices, ascending."""
        return "\n".join(" ".join(map(str, sorted(r))) for r in self.rounds)


def _values(thr: Thresholds) -> Sequence[int]:
    return thr.values if isinstance(thr, ThresholdAssignment) else thr


def _check_seeds(graph: Graph, seeds: Iterable[int]) -> int:
    mask = 0
    for v in seeds:
        if not 0 <= v < graph.n:
            raise ValueError(f"seed {v} out of range for n={graph.n}")
        mask |= 1 << v
    return mask


def propagate_rounds(masks: Sequence[int], thr: Sequence[int], seed_mask: int) -> list[int]:
    """Bitmask core: list of per-round activation masks (empty final round omitted)."""
    n = len(masks)
    active = seed_mask
    inactive = [v for v in range(n) if not (seed_mask >> v) & 1]
    rounds = []
    while inactive:
        new = 0
        still = []
        for v in inactive:
            if (masks[v] & active).bit_count() >= thr[v]:
                new |= 1 << v
            else:
                still.append(v)
        if not new:
            break
        rounds.append(new)
        active |= new
        inactive = still
    return rounds


def closed_mask(masks: Sequence[int], thr: Sequence[int], seed_mask: int) -> int:
    """Bitmask of sigma[S]."""
    active = seed_mask
    inactive = [v for v in range(len(masks)) if not (seed_mask >> v) & 1]
    while inactive:
        still = []
        new = 0
        for v in inactive:
            if (masks[v] & active).bit_count() >= thr[v]:
                new |= 1 << v
            else:
                still.append(v)
        if not new:
            break
        active |= new
        inactive = still
    return active


def propagate(graph: Graph, thr: Thresholds, seeds: Iterable[int]) -> ActivationTrace:
    values = _values(thr)
    if len(values) != graph.n:
        raise ValueError("threshold vector length does not match graph")
    seed_mask = _check_seeds(graph, seeds)
    rounds = propagate_rounds(graph.masks, values, seed_mask)
    final = seed_mask
    for r in rounds:
        final |= r
    return ActivationTrace(
        frozenset(mask_to_list(seed_mask)),
        tuple(frozenset(mask_to_list(r)) for r in rounds),
        frozenset(mask_to_list(final)),
    )


def sigma_closed(graph: Graph, thr: Thresholds, seeds: Iterable[int]) -> frozenset[int]:
    seed_mask = _check_seeds(graph, seeds)
    return frozenset(mask_to_list(closed_mask(graph.masks, _values(thr), seed_mask)))


def sigma_open(graph: Graph, thr: Thresholds, seeds: Iterable[int]) -> frozenset[int]:
    seed_mask = _check_seeds(graph, seeds)
    return frozenset(mask_to_list(closed_mask(graph.masks, _values(thr), seed_mask) & ~seed_mask))


def open_count(graph: Graph, thr: Thresholds, seeds: Iterable[int]) -> int:
    seed_mask = list_to_mask(seeds)
    return (closed_mask(graph.masks, _values(thr), seed_mask) & ~seed_mask).bit_count()
