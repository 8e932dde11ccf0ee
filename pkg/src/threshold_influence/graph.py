"""Graph and instance data model.

Vertices are dense integer indices ``0..n-1``. Graphs are immutable; build them
with :class:`GraphBuilder`, which validates on :meth:`GraphBuilder.freeze`.
Adjacency is kept both as sorted tuples and as integer bitmasks, the latter
being what the solvers use in their inner loops.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence


class GraphError(ValueError):
    """Raised for structurally invalid graphs or instances."""


class Graph:
    """Undirected simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "_adj", "_masks", "_edges", "labels")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = (), labels: Optional[Sequence[str]] = None):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        nbrs: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if v in nbrs[u]:
                raise GraphError(f"duplicate edge ({u}, {v})")
            nbrs[u].add(v)
            nbrs[v].add(u)
        self.n = n
        self._adj = tuple(tuple(sorted(s)) for s in nbrs)
        masks = []
        for s in nbrs:
            m = 0
            for w in s:
                m |= 1 << w
            masks.append(m)
        self._masks = tuple(masks)
        self._edges = tuple(sorted((u, v) for u in range(n) for v in nbrs[u] if u < v))
        if labels is not None and len(labels) != n:
            raise GraphError("label table length must equal n")
        self.labels = tuple(labels) if labels is not None else None

    # -- basic access -------------------------------------------------------

    @property
    def m(self) -> int:
        return len(self._edges)

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        return self._edges

    @property
    def masks(self) -> tuple[int, ...]:
        """Neighbourhood bitmasks, ``masks[v] >> w & 1`` iff ``{v, w}`` is an edge."""
        return self._masks

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self._adj[v]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self._adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return (self._masks[u] >> v) & 1 == 1

    def isolated(self) -> list[int]:
        return [v for v in range(self.n) if not self._adj[v]]

    # -- neighbourhoods ------------------------------------------------------

    def closed_neighborhood(self, v: int) -> int:
        return self._masks[v] | (1 << v)

    def ball(self, v: int, radius: int) -> int:
        """Bitmask of all vertices at distance at most ``radius`` from ``v``."""
        seen = 1 << v
        frontier = seen
        for _ in range(radius):
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self._masks[low.bit_length() - 1]
                f ^= low
            nxt &= ~seen
            if not nxt:
                break
            seen |= nxt
            frontier = nxt
        return seen

    def is_connected_mask(self, mask: int) -> bool:
        """Whether the subgraph induced by ``mask`` is connected (non-empty)."""
        if not mask:
            return False
        start = mask & -mask
        seen = start
        frontier = start
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= self._masks[low.bit_length() - 1]
                f ^= low
            nxt &= mask & ~seen
            seen |= nxt
            frontier = nxt
        return seen == mask

    def is_connected(self) -> bool:
        return self.n == 0 or self.is_connected_mask((1 << self.n) - 1)

    def components(self) -> list[list[int]]:
        left = (1 << self.n) - 1
        out = []
        while left:
            start = left & -left
            seen = start
            frontier = start
            while frontier:
                nxt = 0
                f = frontier
                while f:
                    low = f & -f
                    nxt |= self._masks[low.bit_length() - 1]
                    f ^= low
                nxt &= ~seen
                seen |= nxt
                frontier = nxt
            out.append(mask_to_list(seen))
            left &= ~seen
        return out

    # -- derived graphs ------------------------------------------------------

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph, relabelled to ``0..len(vertices)-1`` in the given order."""
        pos = {v: i for i, v in enumerate(vertices)}
        edges = [(pos[u], pos[v]) for u, v in self._edges if u in pos and v in pos]
        return Graph(len(vertices), edges)

    def disjoint_union(self, other: Graph) -> Graph:
        off = self.n
        edges = list(self._edges) + [(u + off, v + off) for u, v in other.edges]
        return Graph(self.n + other.n, edges)

    # -- dunder --------------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._edges == other._edges and self.labels == other.labels

    def __hash__(self) -> int:
        return hash((self.n, self._edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


class GraphBuilder:
    """Mutable, single-owner graph under construction.

    Edges may be added in any order; duplicates and self-loops are detected
    when :meth:`freeze` is called.
    """

    def __init__(self) -> None:
        self._labels: list[str] = []
        self._thr: list[Optional[int]] = []
        self._edges: list[tuple[int, int]] = []

    @property
    def n(self) -> int:
        return len(self._labels)

    def add_vertex(self, label: str = "", threshold: Optional[int] = None) -> int:
        self._labels.append(label)
        self._thr.append(threshold)
        return len(self._labels) - 1

    def add_edge(self, u: int, v: int) -> None:
        self._edges.append((u, v))

    def set_threshold(self, v: int, threshold: int) -> None:
        self._thr[v] = threshold

    def label(self, v: int) -> str:
        return self._labels[v]

    def degree_map(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self._edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def freeze(self) -> Graph:
        return Graph(self.n, self._edges)

    @property
    def labels(self) -> list[str]:
        return list(self._labels)

    def thresholds(self) -> list[Optional[int]]:
        return list(self._thr)


def mask_to_list(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def list_to_mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


# ---------------------------------------------------------------------------
# thresholds and instances
# ---------------------------------------------------------------------------

GENERAL = "general"
MAJORITY = "majority"
UNANIMITY = "unanimity"
CONSTANT = "constant"


@dataclass(frozen=True)
class ThresholdAssignment:
    """Per-vertex activation thresholds plus the scheme that produced them.

    ``scheme`` is one of ``general``, ``majority``, ``unanimity`` or
    ``constant``; for ``constant`` the bound ``c`` is stored in ``bound``.
    """

    values: tuple[int, ...]
    scheme: str = GENERAL
    bound: Optional[int] = None

    def __post_init__(self) -> None:
        if any(t < 0 for t in self.values):
            raise GraphError("thresholds must be non-negative")
        if self.scheme not in (GENERAL, MAJORITY, UNANIMITY, CONSTANT):
            raise GraphError(f"unknown threshold scheme {self.scheme!r}")
        if self.scheme == CONSTANT:
            if self.bound is None:
                raise GraphError("constant scheme needs a bound")
            if any(t > self.bound for t in self.values):
                raise GraphError(f"threshold exceeds constant bound {self.bound}")

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, v: int) -> int:
        return self.values[v]

    def check(self, graph: Graph) -> None:
        """Validate the scheme invariant against ``graph``."""
        if len(self.values) != graph.n:
            raise GraphError(f"{len(self.values)} thresholds for {graph.n} vertices")
        if self.scheme == MAJORITY:
            bad = [v for v in range(graph.n) if self.values[v] != (graph.degree(v) + 1) // 2]
        elif self.scheme == UNANIMITY:
            bad = [v for v in range(graph.n) if self.values[v] != graph.degree(v)]
        else:
            bad = []
        if bad:
            raise GraphError(f"{self.scheme} invariant violated at vertices {bad[:5]}")

    @property
    def tag(self) -> str:
        return f"constant({self.bound})" if self.scheme == CONSTANT else self.scheme


def assign_thresholds(graph: Graph, scheme: str) -> ThresholdAssignment:
    """Derive thresholds for the ``majority`` or ``unanimity`` scheme."""
    if scheme == MAJORITY:
        return ThresholdAssignment(tuple((d + 1) // 2 for d in graph.degrees()), MAJORITY)
    if scheme == UNANIMITY:
        return ThresholdAssignment(tuple(graph.degrees()), UNANIMITY)
    raise GraphError(f"cannot derive thresholds for scheme {scheme!r}; supply explicit values")


def constant_thresholds(values: Sequence[int], c: int) -> ThresholdAssignment:
    return ThresholdAssignment(tuple(values), CONSTANT, c)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    thresholds: ThresholdAssignment
    k: int = 0
    ell: Optional[int] = None

    def __post_init__(self) -> None:
        self.thresholds.check(self.graph)
        # k > n is a non-binding budget and ell > n an infeasible target; both
        # arise from reductions on tiny sources, so only negatives are rejected
        if self.k < 0:
            raise GraphError(f"budget k={self.k} is negative")
        if self.ell is not None and self.ell < 0:
            raise GraphError(f"target ell={self.ell} is negative")

    @property
    def n(self) -> int:
        return self.graph.n

    def with_budget(self, k: int, ell: Optional[int] = None) -> Instance:
        return Instance(self.graph, self.thresholds, k, ell)


def unanimity_instance(graph: Graph, k: int = 0, ell: Optional[int] = None) -> Instance:
    return Instance(graph, assign_thresholds(graph, UNANIMITY), k, ell)


# ---------------------------------------------------------------------------
# false twins
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class TwinClass:
    members: tuple[int, ...]
    degree: int
    neighborhood: tuple[int, ...]


@dataclass(frozen=True)
class TwinPartition:
    classes: tuple[TwinClass, ...] = field(default_factory=tuple)

    def class_of(self, v: int) -> TwinClass:
        for c in self.classes:
            if v in c.members:
                return c
        raise KeyError(v)


def false_twin_classes(graph: Graph) -> TwinPartition:
    """Group vertices by identical open neighbourhood.

    Vertices sharing an open neighbourhood are never adjacent, so every class
    is a set of false twins. Classes are ordered by their smallest member.
    """
    groups: dict[int, list[int]] = {}
    for v in range(graph.n):
        groups.setdefault(graph.masks[v], []).append(v)
    classes = [
        TwinClass(tuple(members), graph.degree(members[0]), graph.neighbors(members[0]))
        for members in groups.values()
    ]
    classes.sort(key=lambda c: c.members[0])
    return TwinPartition(tuple(classes))


# ---------------------------------------------------------------------------
# small named graphs used across tests, docs and the CLI
# ---------------------------------------------------------------------------


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])
