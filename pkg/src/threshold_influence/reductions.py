"""Gadget constructions from dominating set, clique and densest-k-subgraph.

Each generator returns a :class:`ReductionOutput`: the target instance, one
provenance label per vertex, a forward map from source solutions to target
seed sets, and the parameters used. Vertex numbering follows the creation
order documented on each generator, so output files are reproducible.

Padding sizes (grid depth, number of paths, pendant counts) are exposed
as explicit parameters instead of the asymptotic values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Callable, Iterable, Optional

from .graph import (
    GENERAL,
    MAJORITY,
    UNANIMITY,
    Graph,
    GraphBuilder,
    Instance,
    ThresholdAssignment,
    assign_thresholds,
    constant_thresholds,
)
from .oracles import (
    CLIQUE,
    DEFAULT_CAP,
    DENSEST,
    DOMINATING_SET,
    SearchTooLarge,
    classic_brute_force,
    decide_influence,
    solve_max_closed_exact,
    solve_max_open_exact,
)
from .propagation import closed_mask

KINDS = ("basic", "majority", "constant", "clique", "dks")


@dataclass
class ReductionOutput:
    kind: str
    instance: Instance
    provenance: list[str]
    forward: Callable[[Iterable[int]], tuple[int, ...]]
    params: dict = field(default_factory=dict)

    def forward_map(self, solution: Iterable[int]) -> tuple[int, ...]:
        return self.forward(solution)

    def vertices_labelled(self, prefix: str) -> list[int]:
        return [v for v, lab in enumerate(self.provenance) if lab.startswith(prefix)]

    def provenance_text(self) -> str:
        return "".join(f"{v} {lab}\n" for v, lab in enumerate(self.provenance))


def add_ell_edge(b: GraphBuilder, u: int, v: int, ell: int, tag: str = "") -> list[int]:
    """``ell`` threshold-1 vertices, each adjacent to exactly ``u`` and ``v``."""
    if ell < 1:
        raise ValueError("an ell-edge needs ell >= 1")
    if u == v:
        raise ValueError("ell-edge endpoints must differ")
    out = []
    for i in range(ell):
        w = b.add_vertex(f"gadget({tag or f'{u}-{v}'},{i})", threshold=1)
        b.add_edge(w, u)
        b.add_edge(w, v)
        out.append(w)
    return out


def add_directed_edge_gadget(b: GraphBuilder, u: int, v: int, tag: str = "") -> tuple[int, int, int, int]:
    """4-cycle a-b-c-d-a with a~u and c~v; thresholds a=b=d=1, c=2.

    Activation crosses from ``u`` to ``v`` but never back: ``c`` needs two
    active neighbours among b, d, v, and b, d only fire after a.
    """
    if u == v:
        raise ValueError("directed-edge endpoints must differ")
    tag = tag or f"{u}->{v}"
    a = b.add_vertex(f"gadget({tag},a)", threshold=1)
    bb = b.add_vertex(f"gadget({tag},b)", threshold=1)
    c = b.add_vertex(f"gadget({tag},c)", threshold=2)
    d = b.add_vertex(f"gadget({tag},d)", threshold=1)
    for x, y in ((a, bb), (bb, c), (c, d), (d, a), (a, u), (c, v)):
        b.add_edge(x, y)
    return a, bb, c, d


def _tops(n: int) -> Callable[[Iterable[int]], tuple[int, ...]]:
    def fwd(solution: Iterable[int]) -> tuple[int, ...]:
        sol = sorted(set(solution))
        if any(not 0 <= v < n for v in sol):
            raise ValueError("solution vertex out of range")
        return tuple(sol)

    return fwd


def basic_reduction(g: Graph, k: int = 0) -> ReductionOutput:
    """Bipartite top/bottom graph.

    Vertices: tops ``0..n-1`` then bottoms ``n..2n-1``. Each top ``v^t`` is
    joined to the bottoms of its closed neighbourhood. Tops get unanimity
    thresholds, bottoms threshold 1.
    """
    n = g.n
    b = GraphBuilder()
    for v in range(n):
        b.add_vertex(f"top({v})")
    for v in range(n):
        b.add_vertex(f"bottom({v})", threshold=1)
    for v in range(n):
        b.add_edge(v, n + v)
    for u, v in g.edges:
        b.add_edge(u, n + v)
        b.add_edge(v, n + u)
    graph = b.freeze()
    thr = [graph.degree(v) if v < n else 1 for v in range(2 * n)]
    inst = Instance(graph, ThresholdAssignment(tuple(thr), GENERAL), k)
    return ReductionOutput("basic", inst, b.labels, _tops(n), {"k": k, "n": n, "m": g.m})


def majority_vertex_count(n: int, m: int, k: int, L: int) -> int:
    kk = k + 2
    return (
        2 * n                      # tops, bottoms
        + 1                        # hub w
        + n * L                    # grid
        + kk * (n + 2 * m)         # (k+2)-edges between tops and bottoms
        + n * n + kk * (2 * m - n)  # hub edges w - v^b
        + n * n                    # pendants on the last grid row
        + kk * (2 * m + n)         # pendants on tops
        + n + n * n + kk * (2 * m - n)  # pendants on w
    )


def majority_hardness_instance(g: Graph, k: int, L: int, budget: Optional[int] = None) -> ReductionOutput:
    """Majority-threshold instance from a dominating-set instance ``(g, k)``.

    Creation order: tops ``0..n-1``, bottoms ``n..2n-1``, hub ``w = 2n``,
    grid rows 1..L (``n`` vertices each), then the (k+2)-edges for every
    top-bottom pair (v^t-v^b, then u^t-v^b and v^t-u^b per source edge),
    the hub edges w-v^b of size ``n + (k+2)(deg v - 1)``, ``n`` pendants per
    last-row grid vertex, ``(deg v + 1)(k+2)`` pendants per top and
    ``n + n^2 + (k+2)(2m - n)`` pendants on w. All thresholds are majority.

    The grid depth ``L`` replaces the asymptotic ceil(n^beta). The default budget
    is ``k + 1`` (tops of a dominating set plus w).
    """
    n, m = g.n, g.m
    if k < 1 or L < 1:
        raise ValueError("need k >= 1 and L >= 1")
    if g.isolated():
        raise ValueError("source graph must not have isolated vertices")
    kk = k + 2
    b = GraphBuilder()
    for v in range(n):
        b.add_vertex(f"top({v})")
    for v in range(n):
        b.add_vertex(f"bottom({v})")
    w = b.add_vertex("hub")
    grid = [[b.add_vertex(f"grid({i},{j})") for i in range(1, n + 1)] for j in range(1, L + 1)]
    for v in range(n):
        add_ell_edge(b, v, n + v, kk, f"t{v}-b{v}")
    for u, v in g.edges:
        add_ell_edge(b, u, n + v, kk, f"t{u}-b{v}")
        add_ell_edge(b, v, n + u, kk, f"t{v}-b{u}")
    for v in range(n):
        size = n + kk * (g.degree(v) - 1)
        if size > 0:
            add_ell_edge(b, w, n + v, size, f"w-b{v}")
    for x in grid[0]:
        b.add_edge(x, w)
        for v in range(n):
            b.add_edge(x, n + v)
    for j in range(1, L):
        for x in grid[j]:
            for y in grid[j - 1]:
                b.add_edge(x, y)
    for i, x in enumerate(grid[-1], start=1):
        for t in range(n):
            p = b.add_vertex(f"pending(grid({i},{L}),{t})")
            b.add_edge(p, x)
    for v in range(n):
        for t in range((g.degree(v) + 1) * kk):
            p = b.add_vertex(f"pending(top({v}),{t})")
            b.add_edge(p, v)
    for t in range(n + n * n + kk * (2 * m - n)):
        p = b.add_vertex(f"pending(hub,{t})")
        b.add_edge(p, w)
    graph = b.freeze()
    expected = majority_vertex_count(n, m, k, L)
    if graph.n != expected:
        raise AssertionError(f"vertex tally mismatch: built {graph.n}, expected {expected}")
    inst = Instance(graph, assign_thresholds(graph, MAJORITY), k + 1 if budget is None else budget)
    tops = _tops(n)

    def fwd(solution: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(tops(solution) + (w,)))

    params = {"k": k, "L": L, "n": n, "m": m, "hub": w, "vertex_count": expected}
    return ReductionOutput("majority", inst, b.labels, fwd, params)


def constant_vertex_count(n: int, m: int, P: int, Q: int) -> int:
    return 2 * n + 4 * (n + 2 * m) + P * (n - 1) + P * Q + 4 * P * n


def constant_threshold_instance(g: Graph, k: int, P: int, Q: int) -> ReductionOutput:
    """Thresholds-at-most-two instance from a dominating-set instance.

    Creation order: tops ``0..n-1`` (threshold 2), bottoms ``n..2n-1``
    (threshold 1), then for each of the ``P`` paths its ``n-1`` vertices
    (threshold 2) followed by its ``Q`` terminal pendants (threshold 1), then
    directed-edge gadgets top->bottom (v^t->v^b, then both directions of each
    source edge), then per path the gadgets v_1^b->p_1 and v_i^b->p_{i-1}
    for i = 2..n. ``P`` and ``Q`` replace the asymptotic n^beta.
    """
    n, m = g.n, g.m
    if n < 2:
        raise ValueError("constant-threshold construction needs n >= 2")
    if k < 1 or P < 1 or Q < 1:
        raise ValueError("need k, P, Q >= 1")
    b = GraphBuilder()
    for v in range(n):
        b.add_vertex(f"top({v})", threshold=2)
    for v in range(n):
        b.add_vertex(f"bottom({v})", threshold=1)
    paths = []
    for j in range(1, P + 1):
        path = [b.add_vertex(f"path({i},{j})", threshold=2) for i in range(1, n)]
        for x, y in zip(path, path[1:]):
            b.add_edge(x, y)
        for t in range(Q):
            p = b.add_vertex(f"pending(path({n - 1},{j}),{t})", threshold=1)
            b.add_edge(p, path[-1])
        paths.append(path)
    for v in range(n):
        add_directed_edge_gadget(b, v, n + v, f"t{v}->b{v}")
    for u, v in g.edges:
        add_directed_edge_gadget(b, u, n + v, f"t{u}->b{v}")
        add_directed_edge_gadget(b, v, n + u, f"t{v}->b{u}")
    for j, path in enumerate(paths, start=1):
        add_directed_edge_gadget(b, n + 0, path[0], f"b0->p1^{j}")
        for i in range(2, n + 1):
            add_directed_edge_gadget(b, n + i - 1, path[i - 2], f"b{i - 1}->p{i - 1}^{j}")
    graph = b.freeze()
    expected = constant_vertex_count(n, m, P, Q)
    if graph.n != expected:
        raise AssertionError(f"vertex tally mismatch: built {graph.n}, expected {expected}")
    thr = constant_thresholds([t for t in b.thresholds()], 2)
    inst = Instance(graph, thr, k)
    params = {"k": k, "P": P, "Q": Q, "n": n, "m": m, "vertex_count": expected}
    return ReductionOutput("constant", inst, b.labels, _tops(n), params)


def clique_reduction(g: Graph, k: int) -> ReductionOutput:
    """Unanimity instance whose (k, (k+1)C(k,2)) answer equals k-clique existence.

    Copies of the non-isolated source vertices come first (ascending), then
    ``k+1`` edge-vertices per source edge in edge order. Isolated source
    vertices are left out: their copies would have threshold 0 and fire for
    free, while they can never be in a clique of size >= 2.
    """
    if k < 2:
        raise ValueError("clique reduction needs k >= 2")
    b = GraphBuilder()
    copy = {}
    for v in range(g.n):
        if g.degree(v) > 0:
            copy[v] = b.add_vertex(f"copy({v})")
    for u, v in g.edges:
        for i in range(1, k + 2):
            e = b.add_vertex(f"edge-vertex({u},{v},{i})")
            b.add_edge(e, copy[u])
            b.add_edge(e, copy[v])
    graph = b.freeze()
    ell = (k + 1) * comb(k, 2)
    inst = Instance(graph, assign_thresholds(graph, UNANIMITY), k, ell)

    def fwd(solution: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(copy[v] for v in set(solution)))

    return ReductionOutput("clique", inst, b.labels, fwd, {"k": k, "ell": ell, "n": g.n, "m": g.m})


def dks_reduction(g: Graph, k: int) -> ReductionOutput:
    """Unanimity instance whose optimum open influence equals the densest-k
    edge count.

    Copies ``0..n-1``, one edge-vertex per source edge, then ``k+1`` guard
    vertices adjacent to every copy. The guards must never fire, which needs
    more copies than seeds: when ``k >= n`` the source is first padded with
    ``k + 1 - n`` isolated vertices (labelled ``padding(i)``), which changes
    neither side's value.
    """
    n = g.n
    if k < 0:
        raise ValueError(f"dks reduction needs k >= 0 (k={k})")
    pad = max(0, k + 1 - n)
    b = GraphBuilder()
    for v in range(n):
        b.add_vertex(f"copy({v})")
    for i in range(pad):
        b.add_vertex(f"padding({i})")
    for u, v in g.edges:
        e = b.add_vertex(f"edge-vertex({u},{v},1)")
        b.add_edge(e, u)
        b.add_edge(e, v)
    for i in range(1, k + 2):
        x = b.add_vertex(f"guard({i})")
        for v in range(n + pad):
            b.add_edge(x, v)
    graph = b.freeze()
    inst = Instance(graph, assign_thresholds(graph, UNANIMITY), k)
    return ReductionOutput("dks", inst, b.labels, _tops(n), {"k": k, "n": n, "m": g.m, "padding": pad})


def generate(kind: str, g: Graph, k: int, L: int = 1, P: int = 1, Q: int = 1) -> ReductionOutput:
    if kind == "basic":
        return basic_reduction(g, k)
    if kind == "majority":
        return majority_hardness_instance(g, k, L)
    if kind == "constant":
        return constant_threshold_instance(g, k, P, Q)
    if kind == "clique":
        return clique_reduction(g, k)
    if kind == "dks":
        return dks_reduction(g, k)
    raise ValueError(f"unknown reduction kind {kind!r}; expected one of {KINDS}")


# ---------------------------------------------------------------------------
# verification harness
# ---------------------------------------------------------------------------


@dataclass
class VerifyReport:
    kind: str
    source_answer: Optional[int] = None
    target_answer: Optional[int] = None
    source_witness: Optional[tuple[int, ...]] = None
    target_witness: Optional[tuple[int, ...]] = None
    source_error: Optional[str] = None
    target_error: Optional[str] = None
    params: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.source_error is None and self.target_error is None

    @property
    def agree(self) -> Optional[bool]:
        if not self.complete:
            return None
        return self.source_answer == self.target_answer

    def record(self) -> dict:
        return {
            "kind": self.kind,
            "agree": self.agree,
            "source_answer": self.source_answer,
            "target_answer": self.target_answer,
            "source_witness": list(self.source_witness) if self.source_witness is not None else None,
            "target_witness": list(self.target_witness) if self.target_witness is not None else None,
            "source_error": self.source_error,
            "target_error": self.target_error,
            **{f"param_{k}": v for k, v in self.params.items()},
        }


def _corrupt_bottom(out: ReductionOutput, vertex: int, value: int) -> ReductionOutput:
    inst = out.instance
    n = out.params["n"]
    vals = list(inst.thresholds.values)
    vals[n + vertex] = value
    bad = Instance(inst.graph, ThresholdAssignment(tuple(vals), GENERAL), inst.k, inst.ell)
    return ReductionOutput(out.kind, bad, out.provenance, out.forward, dict(out.params, fault=f"bottom({vertex})={value}"))


def verify_reduction(kind: str, source: Graph, k: int, cap: int = DEFAULT_CAP,
                     L: int = 1, P: int = 1, Q: int = 1,
                     fault: Optional[tuple[int, int]] = None) -> VerifyReport:
    """Run the source-side classic oracle and the target-side influence oracle.

    basic:    dominating set of size k  <=>  some |S'| <= k activates all of G'
    clique:   k-clique                  <=>  (k, (k+1)C(k,2))-Influence on G'
    dks:      densest-k edge count      ==   optimum open influence on G'
    majority / constant: yes-side only; if a dominating set exists, its
    forward image must activate every grid / path-pendant vertex.

    ``fault=(v, t)`` overwrites the threshold of bottom(v) with ``t`` (basic
    only) to self-test the harness.
    """
    out = generate(kind, source, k, L, P, Q)
    if fault is not None:
        if kind != "basic":
            raise ValueError("fault injection is only defined for the basic reduction")
        out = _corrupt_bottom(out, *fault)
    rep = VerifyReport(kind, params=dict(out.params))
    inst = out.instance

    src_problem = {"basic": DOMINATING_SET, "majority": DOMINATING_SET, "constant": DOMINATING_SET,
                   "clique": CLIQUE, "dks": DENSEST}[kind]
    try:
        if k > source.n and kind == "clique":
            # no k-subset exists, so no k-clique either
            rep.source_answer, rep.source_witness = 0, None
        else:
            src = classic_brute_force(src_problem, source, min(k, source.n), cap)
            rep.source_answer, rep.source_witness = src.value, src.witness
    except SearchTooLarge as exc:
        rep.source_error = str(exc)

    try:
        if kind == "basic":
            res = solve_max_closed_exact(inst, cap)
            rep.target_answer = int(res.closed_value == inst.graph.n)
            rep.target_witness = res.seeds if rep.target_answer else None
        elif kind == "clique":
            dec = decide_influence(inst, cap)
            rep.target_answer, rep.target_witness = int(dec.answer), dec.witness
        elif kind == "dks":
            res = solve_max_open_exact(inst, cap)
            rep.target_answer, rep.target_witness = res.open_value, res.seeds
        else:
            if rep.source_error is not None:
                raise SearchTooLarge(0, cap, "source side failed; yes-side check")
            if not rep.source_answer:
                rep.target_answer = 0
            else:
                rep.target_answer, rep.target_witness = _yes_side(out, rep.source_witness or ())
    except SearchTooLarge as exc:
        rep.target_error = str(exc)
    return rep


def _yes_side(out: ReductionOutput, ds: Iterable[int]) -> tuple[int, tuple[int, ...]]:
    inst = out.instance
    seeds = out.forward_map(ds)
    sm = 0
    for v in seeds:
        sm |= 1 << v
    active = closed_mask(inst.graph.masks, inst.thresholds.values, sm)
    prefixes = ("grid(", "pending(grid(") if out.kind == "majority" else ("path(", "pending(path(")
    targets = [v for v, lab in enumerate(out.provenance) if lab.startswith(prefixes)]
    ok = all((active >> v) & 1 for v in targets)
    return int(ok), seeds
