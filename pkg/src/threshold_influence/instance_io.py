"""Line-oriented instance format.

::

    c <free comment>
    c scheme unanimity          # optional: general | majority | unanimity | constant <c>
    c k 2                       # optional budget
    c ell 3                     # optional activation target
    c label 0 alice             # optional external name
    p influence <n> <m>
    t <v> <theta>               # one per vertex; may be omitted entirely
                                # under majority or unanimity
    e <u> <v>                   # m lines, 0-based

Serialization emits the metadata comments, the header, thresholds in vertex
order and edges in ascending order, so output is byte-for-byte deterministic.
"""

from __future__ import annotations

from typing import Iterable, Optional, TextIO, Union

from .graph import (
    CONSTANT,
    GENERAL,
    MAJORITY,
    UNANIMITY,
    Graph,
    GraphError,
    Instance,
    ThresholdAssignment,
)


class ParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno
        self.message = message


def _int(tok: str, lineno: int, what: str) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise ParseError(lineno, f"{what} {tok!r} is not an integer") from None
    if val < 0:
        raise ParseError(lineno, f"{what} must be non-negative, got {val}")
    return val


def parse_instance(text: Union[str, TextIO, Iterable[str]]) -> Instance:
    """Parse an instance; every structural problem raises :class:`ParseError`."""
    lines = text.splitlines() if isinstance(text, str) else text
    n: Optional[int] = None
    m_declared = 0
    scheme, bound = GENERAL, None
    k, ell = 0, None
    labels: dict[int, str] = {}
    thr: dict[int, int] = {}
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    deferred_labels: list[tuple[int, int, str]] = []
    last = 0

    for lineno, raw in enumerate(lines, start=1):
        last = lineno
        line = raw.strip()
        if not line:
            continue
        tok = line.split()
        kind = tok[0]
        if kind == "c":
            if len(tok) >= 3 and tok[1] == "scheme":
                scheme = tok[2]
                if scheme == CONSTANT:
                    if len(tok) != 4:
                        raise ParseError(lineno, "constant scheme needs a bound")
                    bound = _int(tok[3], lineno, "constant bound")
                elif scheme not in (GENERAL, MAJORITY, UNANIMITY):
                    raise ParseError(lineno, f"unknown scheme {scheme!r}")
            elif len(tok) == 3 and tok[1] == "k":
                k = _int(tok[2], lineno, "k")
            elif len(tok) == 3 and tok[1] == "ell":
                ell = _int(tok[2], lineno, "ell")
            elif len(tok) >= 4 and tok[1] == "label":
                deferred_labels.append((lineno, _int(tok[2], lineno, "vertex"), " ".join(tok[3:])))
            continue
        if kind == "p":
            if n is not None:
                raise ParseError(lineno, "duplicate header")
            if len(tok) != 4 or tok[1] != "influence":
                raise ParseError(lineno, "malformed header, expected 'p influence <n> <m>'")
            n = _int(tok[2], lineno, "n")
            m_declared = _int(tok[3], lineno, "m")
            continue
        if n is None:
            raise ParseError(lineno, "data line before header")
        if kind == "t":
            if len(tok) != 3:
                raise ParseError(lineno, "malformed threshold line, expected 't <v> <theta>'")
            v = _int(tok[1], lineno, "vertex")
            if v >= n:
                raise ParseError(lineno, f"threshold for unknown vertex {v} (n={n})")
            if v in thr:
                raise ParseError(lineno, f"duplicate threshold for vertex {v}")
            thr[v] = _int(tok[2], lineno, "threshold")
        elif kind == "e":
            if len(tok) != 3:
                raise ParseError(lineno, "malformed edge line, expected 'e <u> <v>'")
            u = _int(tok[1], lineno, "vertex")
            v = _int(tok[2], lineno, "vertex")
            if u >= n or v >= n:
                raise ParseError(lineno, f"vertex index out of range in edge ({u}, {v}), n={n}")
            if u == v:
                raise ParseError(lineno, f"self-loop at vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ParseError(lineno, f"duplicate edge {key}")
            seen.add(key)
            edges.append(key)
        else:
            raise ParseError(lineno, f"unknown line type {kind!r}")

    if n is None:
        raise ParseError(last, "missing header")
    if len(edges) != m_declared:
        raise ParseError(last, f"header declares {m_declared} edges, found {len(edges)}")
    if not thr and scheme in (MAJORITY, UNANIMITY):
        # thresholds follow from the degrees; an all-omitted block is allowed
        deg = [0] * n
        for u, v in edges:
            deg[u] += 1
            deg[v] += 1
        thr = {v: (d + 1) // 2 if scheme == MAJORITY else d for v, d in enumerate(deg)}
    missing = [v for v in range(n) if v not in thr]
    if missing:
        raise ParseError(last, f"missing threshold for vertices {missing[:5]}")
    for lineno, v, name in deferred_labels:
        if v >= n:
            raise ParseError(lineno, f"label for unknown vertex {v}")
        labels[v] = name
    label_table = [labels.get(v, "") for v in range(n)] if labels else None
    try:
        graph = Graph(n, edges, label_table)
        thresholds = ThresholdAssignment(tuple(thr[v] for v in range(n)), scheme, bound)
        return Instance(graph, thresholds, k, ell)
    except GraphError as exc:
        raise ParseError(last, str(exc)) from None


def serialize_instance(inst: Instance, comments: Iterable[str] = ()) -> str:
    g = inst.graph
    out = [f"c {c}" for c in comments]
    th = inst.thresholds
    out.append(f"c scheme {th.scheme}" + (f" {th.bound}" if th.scheme == CONSTANT else ""))
    out.append(f"c k {inst.k}")
    if inst.ell is not None:
        out.append(f"c ell {inst.ell}")
    if g.labels is not None:
        out.extend(f"c label {v} {name}" for v, name in enumerate(g.labels) if name)
    out.append(f"p influence {g.n} {g.m}")
    out.extend(f"t {v} {th[v]}" for v in range(g.n))
    out.extend(f"e {u} {v}" for u, v in g.edges)
    return "\n".join(out) + "\n"


def read_instance(path: str) -> Instance:
    with open(path, encoding="ascii") as fh:
        return parse_instance(fh.read())


def write_instance(path: str, inst: Instance, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(serialize_instance(inst, comments))
