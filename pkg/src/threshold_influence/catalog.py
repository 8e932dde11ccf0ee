"""Exhaustive catalogs of small graphs up to isomorphism.

Graphs on ``n`` vertices are generated by adding one vertex to every graph
on ``n - 1`` vertices in all possible ways and keeping one representative
per canonical form. Connected graphs only need connected parents (every
connected graph has a vertex whose removal keeps it connected), and the
family of graphs with maximum degree at most ``d`` is closed under vertex
deletion, so both restrictions can be applied during generation.

The canonical form is computed by colour refinement followed by
individualisation of the first non-singleton cell, taking the smallest
adjacency code over all leaves of the search tree. Automorphisms found on
the way prune branches that lie in an already explored orbit.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Iterator, Optional, Sequence

from .graph import Graph


def _refine(masks: Sequence[int], colours: list[int]) -> list[int]:
    """Stable colour refinement; colours are renumbered by sorted signature so
    the result does not depend on vertex names."""
    n = len(masks)
    ncol = len(set(colours))
    while True:
        sigs = []
        for v in range(n):
            m = masks[v]
            nb = []
            while m:
                low = m & -m
                nb.append(colours[low.bit_length() - 1])
                m ^= low
            nb.sort()
            sigs.append((colours[v], tuple(nb)))
        rank = {s: i for i, s in enumerate(sorted(set(sigs)))}
        colours = [rank[s] for s in sigs]
        if len(rank) == ncol:
            return colours
        ncol = len(rank)


def _code(masks: Sequence[int], order: Sequence[int]) -> int:
    """Upper-triangle adjacency bits of the graph relabelled by ``order``."""
    code = 0
    n = len(order)
    for i in range(n):
        mi = masks[order[i]]
        for j in range(i + 1, n):
            code = (code << 1) | ((mi >> order[j]) & 1)
    return code


def canonical_form(g: Graph) -> tuple[int, int]:
    """Isomorphism invariant ``(n, code)``; equal iff the graphs are isomorphic."""
    masks = g.masks
    n = g.n
    if n <= 1:
        return (n, 0)
    best: list = [None, None]  # code, leaf order
    autos: list[list[int]] = []

    def orbit_roots(fixed: Sequence[int]) -> list[int]:
        parent = list(range(n))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a in autos:
            if all(a[f] == f for f in fixed):
                for x in range(n):
                    rx, ry = find(x), find(a[x])
                    if rx != ry:
                        parent[rx] = ry
        return [find(x) for x in range(n)]

    def search(colours: list[int], path: list[int]) -> None:
        colours = _refine(masks, colours)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colours):
            cells.setdefault(c, []).append(v)
        target = None
        for c in sorted(cells):
            if len(cells[c]) > 1:
                target = cells[c]
                break
        if target is None:
            order = sorted(range(n), key=colours.__getitem__)
            code = _code(masks, order)
            if best[0] is None or code < best[0]:
                best[0], best[1] = code, order
            elif code == best[0]:
                # same code: map the best leaf onto this one
                perm = [0] * n
                for a, b in zip(best[1], order):
                    perm[a] = b
                autos.append(perm)
            return
        explored: list[int] = []
        for v in target:
            if explored:
                roots = orbit_roots(path)
                if roots[v] in {roots[u] for u in explored}:
                    continue
            explored.append(v)
            nxt = [2 * c + (0 if u == v else 1) for u, c in enumerate(colours)]
            search(nxt, path + [v])

    search([0] * n, [])
    return (n, best[0])


def canonical_graph(g: Graph) -> Graph:
    """The representative graph whose edges are read off the canonical code."""
    n, code = canonical_form(g)
    edges = []
    bit = n * (n - 1) // 2 - 1
    for i in range(n):
        for j in range(i + 1, n):
            if (code >> bit) & 1:
                edges.append((i, j))
            bit -= 1
    return Graph(n, edges)


def _extend(parents: Sequence[Graph], connected: bool, max_degree: Optional[int]) -> list[Graph]:
    reps: dict[tuple[int, int], Graph] = {}
    for p in parents:
        n = p.n
        open_slots = [v for v in range(n) if max_degree is None or p.degree(v) < max_degree]
        top = len(open_slots) if max_degree is None else min(max_degree, len(open_slots))
        for size in range(0 if not connected or n == 0 else 1, top + 1):
            for nbrs in combinations(open_slots, size):
                g = Graph(n + 1, list(p.edges) + [(v, n) for v in nbrs])
                key = canonical_form(g)
                if key not in reps:
                    reps[key] = g
    return [canonical_graph(reps[k]) for k in sorted(reps)]


@lru_cache(maxsize=None)
def _graphs(n: int, connected: bool, max_degree: Optional[int]) -> tuple[Graph, ...]:
    if n == 0:
        return (Graph(0),)
    return tuple(_extend(_graphs(n - 1, connected, max_degree), connected, max_degree))


def graphs(n: int, connected: bool = False, max_degree: Optional[int] = None) -> tuple[Graph, ...]:
    """All graphs on exactly ``n`` vertices up to isomorphism, in canonical order.

    >>> [len(graphs(i)) for i in range(1, 6)]
    [1, 2, 4, 11, 34]
    >>> [len(graphs(i, connected=True)) for i in range(1, 6)]
    [1, 1, 2, 6, 21]
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    if max_degree is not None and max_degree < 0:
        raise ValueError("max_degree must be non-negative")
    return _graphs(n, connected, max_degree)


def graphs_upto(n_max: int, connected: bool = False, max_degree: Optional[int] = None,
                n_min: int = 1) -> Iterator[Graph]:
    for n in range(n_min, n_max + 1):
        yield from graphs(n, connected, max_degree)


def disjoint_unions(parts: Sequence[Graph]) -> Iterator[Graph]:
    """Disjoint unions of every unordered pair (with repetition) from ``parts``."""
    for i, a in enumerate(parts):
        for b in parts[i:]:
            yield a.disjoint_union(b)
