"""Benchmark harness: run algorithms over a corpus and join with exact optima.

A corpus is a directory of instance files (``*.inst``); the instance id is
the file stem. Every row is computed independently, so one instance that
blows the exploration cap or fails to parse does not stop the suite.
Rows are sorted by (instance id, algorithm) and the table is tab-delimited.
Elapsed time is only emitted on request, keeping default output
byte-identical across runs.
"""

from __future__ import annotations

import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from typing import Optional, Sequence

from .approx import RatioSpec, bounded_degree_approx, fpt_ratio_approx, twin_approx_open
from .catalog import graphs_upto
from .graph import UNANIMITY, Graph, unanimity_instance
from .instance_io import ParseError, read_instance, write_instance
from .oracles import DEFAULT_CAP, SearchTooLarge, solve_max_open_exact

ALGORITHMS = ("twin", "greedy", "fpt-ratio", "exact")

COLUMNS = ("instance", "algorithm", "k", "value", "optimum", "ratio", "explored", "status")


@dataclass
class BenchRecord:
    instance: str
    algorithm: str
    k: int
    value: Optional[int] = None
    optimum: Optional[int] = None
    explored: Optional[int] = None
    status: str = "ok"
    elapsed: Optional[float] = None

    @property
    def ratio(self) -> Optional[float]:
        """optimum / value; ``inf`` flags a zero value against a positive optimum."""
        if self.value is None or self.optimum is None:
            return None
        if self.value > 0:
            return self.optimum / self.value
        return float("inf") if self.optimum > 0 else None

    def cells(self, timing: bool = False) -> list[str]:
        def fmt(x) -> str:
            if x is None:
                return "-"
            if isinstance(x, float):
                return "inf" if x == float("inf") else f"{x:.6g}"
            return str(x)

        row = [self.instance, self.algorithm, str(self.k), fmt(self.value), fmt(self.optimum),
               fmt(self.ratio), fmt(self.explored), self.status]
        if timing:
            row.append(fmt(None if self.elapsed is None else round(self.elapsed * 1000, 3)))
        return row

    def as_dict(self) -> dict:
        d = asdict(self)
        d["ratio"] = self.ratio
        return d


def corpus_files(corpus_dir: str) -> list[tuple[str, str]]:
    if not os.path.isdir(corpus_dir):
        raise FileNotFoundError(f"corpus directory {corpus_dir!r} does not exist")
    out = []
    for name in sorted(os.listdir(corpus_dir)):
        if name.endswith(".inst"):
            out.append((name[: -len(".inst")], os.path.join(corpus_dir, name)))
    return out


def _run_one(job: tuple) -> list[BenchRecord]:
    inst_id, path, algorithms, k_override, ratio_name, ratio_table, cap = job
    try:
        inst = read_instance(path)
    except (OSError, ParseError) as exc:
        return [BenchRecord(inst_id, a, k_override or 0, status=f"error: {exc}") for a in algorithms]
    k = inst.k if k_override is None else k_override
    g = inst.graph
    if inst.thresholds.scheme != UNANIMITY:
        return [BenchRecord(inst_id, a, k, status="error: not a unanimity instance") for a in algorithms]
    ratio = RatioSpec.tabulated(ratio_table) if ratio_table else RatioSpec(ratio_name)

    optimum = None
    opt_status = "ok"
    try:
        optimum = solve_max_open_exact(unanimity_instance(g, k), cap).open_value
    except SearchTooLarge:
        opt_status = "cap"

    rows = []
    for algo in algorithms:
        rec = BenchRecord(inst_id, algo, k, optimum=optimum)
        t0 = time.perf_counter()
        try:
            if algo == "twin":
                res = twin_approx_open(g, k)
            elif algo == "greedy":
                res = bounded_degree_approx(g, k)
            elif algo == "fpt-ratio":
                res = fpt_ratio_approx(g, k, ratio, cap)
            elif algo == "exact":
                res = solve_max_open_exact(unanimity_instance(g, k), cap)
            else:
                raise ValueError(f"unknown algorithm {algo!r}")
            rec.value, rec.explored = res.open_value, res.explored
            rec.status = opt_status
        except SearchTooLarge:
            rec.status = "cap"
        except Exception as exc:  # per-instance isolation: record and move on
            rec.status = f"error: {type(exc).__name__}: {exc}"
        rec.elapsed = time.perf_counter() - t0
        rows.append(rec)
    return rows


def bench_suite(corpus_dir: str, algorithms: Sequence[str] = ("twin",), k: Optional[int] = None,
                ratio: str = "log2", ratio_table: Optional[Sequence[float]] = None,
                cap: int = DEFAULT_CAP, workers: int = 1) -> list[BenchRecord]:
    """Run ``algorithms`` on every corpus instance; ``k`` overrides the file budget."""
    for a in algorithms:
        if a not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {a!r}; expected one of {ALGORITHMS}")
    if workers < 1:
        raise ValueError("workers must be >= 1")
    RatioSpec.tabulated(ratio_table) if ratio_table else RatioSpec(ratio)  # validate early
    jobs = [(i, p, tuple(algorithms), k, ratio, tuple(ratio_table) if ratio_table else None, cap)
            for i, p in corpus_files(corpus_dir)]
    if workers == 1 or len(jobs) <= 1:
        chunks = [_run_one(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(_run_one, jobs))
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=lambda r: (r.instance, r.algorithm))
    return rows


def format_table(rows: Sequence[BenchRecord], timing: bool = False) -> str:
    header = list(COLUMNS) + (["elapsed_ms"] if timing else [])
    lines = ["\t".join(header)]
    lines.extend("\t".join(r.cells(timing)) for r in rows)
    return "\n".join(lines) + "\n"


def summarize(rows: Sequence[BenchRecord]) -> dict:
    """Per-algorithm counts and worst observed ratio."""
    out: dict = {}
    for r in rows:
        s = out.setdefault(r.algorithm, {"rows": 0, "ok": 0, "cap": 0, "error": 0, "max_ratio": None})
        s["rows"] += 1
        key = r.status if r.status in ("ok", "cap") else "error"
        s[key] += 1
        ratio = r.ratio
        if ratio is not None and (s["max_ratio"] is None or ratio > s["max_ratio"]):
            s["max_ratio"] = ratio
    return out


def write_summary(path: str, rows: Sequence[BenchRecord]) -> None:
    with open(path, "w", encoding="ascii") as fh:
        json.dump(summarize(rows), fh, indent=2, sort_keys=True)
        fh.write("\n")


# ---------------------------------------------------------------------------
# corpus generation
# ---------------------------------------------------------------------------


def write_catalog_corpus(out_dir: str, n_max: int, k: int, connected: bool = True,
                         max_degree: Optional[int] = None, n_min: int = 1) -> list[str]:
    """One unanimity instance file per catalog graph, named ``g<n>_<index>``."""
    os.makedirs(out_dir, exist_ok=True)
    paths = []
    counters: dict[int, int] = {}
    for g in graphs_upto(n_max, connected, max_degree, n_min):
        idx = counters.get(g.n, 0)
        counters[g.n] = idx + 1
        path = os.path.join(out_dir, f"g{g.n}_{idx:05d}.inst")
        write_instance(path, unanimity_instance(g, k))
        paths.append(path)
    return paths


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])


def write_random_corpus(out_dir: str, count: int, n: int, p: float, k: int, seed: int) -> list[str]:
    os.makedirs(out_dir, exist_ok=True)
    rng = random.Random(seed)
    paths = []
    for i in range(count):
        path = os.path.join(out_dir, f"r{i:05d}.inst")
        write_instance(path, unanimity_instance(random_graph(n, p, rng), k), [f"random n={n} p={p} seed={seed}"])
        paths.append(path)
    return paths
