"""Command-line entry point.

Exit status: 0 on success, 1 when a search exceeds the exploration cap,
2 on usage, I/O or parse errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from . import __version__
from .approx import (
    RatioSpec,
    bounded_degree_approx,
    closed_from_open,
    exact_open,
    fpt_ratio_approx,
    max_independent_set_via_influence,
    twin_approx_open,
    vertex_cover_from_influence,
)
from .bench import (
    ALGORITHMS,
    bench_suite,
    format_table,
    write_catalog_corpus,
    write_random_corpus,
    write_summary,
)
from .fpt import solve_influence_fpt
from .graph import UNANIMITY, GraphError
from .instance_io import ParseError, read_instance, serialize_instance
from .oracles import DEFAULT_CAP, SearchTooLarge, result_record, solve_max_closed_exact, solve_max_open_exact
from .propagation import propagate
from .reductions import KINDS, generate, verify_reduction

EXIT_OK, EXIT_CAP, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if val < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return val


def _nonneg(text: str) -> int:
    try:
        val = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if val < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return val


def parse_ratio(text: str) -> RatioSpec:
    """A preset name or comma-separated values r(1), r(2), ..."""
    if text in RatioSpec.PRESETS:
        return RatioSpec(text)
    try:
        return RatioSpec.tabulated([float(x) for x in text.split(",")])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad ratio {text!r}: {exc}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=_positive, default=DEFAULT_CAP,
                        help="maximum number of candidate sets any search may enumerate")
    common.add_argument("--workers", type=_positive, default=1, help="parallel workers (bench only)")
    common.add_argument("--output", "-o", metavar="PATH", help="write results here instead of stdout")
    common.add_argument("--format", choices=("table", "records"), default="table",
                        help="tab-delimited table or JSON records")

    p = argparse.ArgumentParser(prog="threshold-influence",
                                description="Influence maximisation under threshold propagation.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", parents=[common], help="exact maximum open/closed influence")
    s.add_argument("instance")
    s.add_argument("--exact", action="store_true", help="exhaustive search (the only solver; accepted for clarity)")
    obj = s.add_mutually_exclusive_group()
    obj.add_argument("--open", dest="objective", action="store_const", const="open", default="open")
    obj.add_argument("--closed", dest="objective", action="store_const", const="closed")
    s.add_argument("-k", type=_nonneg, help="budget (defaults to the file's 'c k' line)")
    s.add_argument("--trace", action="store_true", help="dump the activation rounds of the answer to stderr")

    a = sub.add_parser("approx", parents=[common], help="approximation algorithms (unanimity)")
    a.add_argument("instance")
    a.add_argument("--algo", choices=("twin", "closed-twin", "greedy", "fpt-ratio", "mis", "vc"), default="twin")
    a.add_argument("-k", type=_nonneg)
    a.add_argument("--ratio", type=parse_ratio, default=RatioSpec("log2"),
                   help="ratio function for fpt-ratio: log2, sqrt, linear or r(1),r(2),...")
    a.add_argument("--trace", action="store_true")

    f = sub.add_parser("fpt-decide", parents=[common], help="decide (k, ell)-influence with the bounded-degree algorithm")
    f.add_argument("instance")
    f.add_argument("-k", type=_nonneg)
    f.add_argument("--ell", type=_nonneg)

    g = sub.add_parser("generate", parents=[common], help="build a reduction instance from a source graph")
    g.add_argument("source", help="instance file whose graph is the source (thresholds ignored)")
    g.add_argument("--kind", choices=KINDS, required=True)
    g.add_argument("-k", type=_nonneg, required=True)
    g.add_argument("--L", type=_positive, default=1, help="grid depth (majority)")
    g.add_argument("--P", type=_positive, default=1, help="number of paths (constant)")
    g.add_argument("--Q", type=_positive, default=1, help="pendants per path end (constant)")

    v = sub.add_parser("verify", parents=[common], help="check a reduction against brute-force oracles")
    v.add_argument("source")
    v.add_argument("--kind", choices=KINDS, required=True)
    v.add_argument("-k", type=_nonneg, required=True)
    v.add_argument("--L", type=_positive, default=1)
    v.add_argument("--P", type=_positive, default=1)
    v.add_argument("--Q", type=_positive, default=1)
    v.add_argument("--fault", nargs=2, type=_nonneg, metavar=("V", "T"),
                   help="corrupt the threshold of bottom(V) to T (basic only)")

    b = sub.add_parser("bench", parents=[common], help="run algorithms over a corpus directory")
    b.add_argument("corpus")
    b.add_argument("--algo", default="twin",
                   help=f"comma-separated subset of {','.join(ALGORITHMS)}")
    b.add_argument("-k", type=_nonneg, help="budget override for every instance")
    b.add_argument("--ratio", default="log2")
    b.add_argument("--timing", action="store_true", help="add an elapsed_ms column (output no longer deterministic)")
    b.add_argument("--make-catalog", type=_positive, metavar="N",
                   help="first fill the corpus with every graph on at most N vertices")
    b.add_argument("--connected", action="store_true", help="catalog: connected graphs only")
    b.add_argument("--max-degree", type=_nonneg, help="catalog: maximum degree bound")
    b.add_argument("--make-random", type=_positive, metavar="COUNT",
                   help="first fill the corpus with COUNT random graphs")
    b.add_argument("--n", type=_positive, default=8, help="random graphs: vertex count")
    b.add_argument("--p", type=float, default=0.3, help="random graphs: edge probability")
    b.add_argument("--seed", type=int, default=0, help="random graphs: RNG seed")
    return p


# ---------------------------------------------------------------------------
# output helpers
# ---------------------------------------------------------------------------


def _cell(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, (list, tuple)):
        return ",".join(map(str, x)) if x else "{}"
    return str(x)


def emit(records: list[dict], args) -> None:
    """Append records to ``--output`` (or print them) in the chosen format."""
    if args.format == "records":
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
        header = ""
    else:
        keys = list(records[0]) if records else []
        header = "\t".join(keys) + "\n"
        text = "".join("\t".join(_cell(r[k]) for k in keys) + "\n" for r in records)
    if args.output:
        fresh = not os.path.exists(args.output) or os.path.getsize(args.output) == 0
        with open(args.output, "a", encoding="ascii") as fh:
            fh.write((header if fresh else "") + text)
    else:
        sys.stdout.write(header + text)


def _load(path: str, k: Optional[int] = None, ell: Optional[int] = None):
    inst = read_instance(path)
    if k is not None or ell is not None:
        inst = inst.with_budget(inst.k if k is None else k, inst.ell if ell is None else ell)
    return inst


def _need_unanimity(inst, what: str) -> None:
    if inst.thresholds.scheme != UNANIMITY:
        raise UsageError(f"{what} needs a unanimity instance (file declares {inst.thresholds.tag})")


def _trace(inst, seeds) -> None:
    tr = propagate(inst.graph, inst.thresholds, seeds)
    sys.stderr.write(f"seeds {' '.join(map(str, sorted(tr.seeds)))}\n")
    for i, line in enumerate(tr.dump().splitlines(), start=1):
        sys.stderr.write(f"round {i}: {line}\n")


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_solve(args) -> int:
    inst = _load(args.instance, args.k)
    if args.objective == "closed":
        res = solve_max_closed_exact(inst, args.cap)
        value = res.closed_value
    else:
        res = solve_max_open_exact(inst, args.cap)
        value = res.open_value
    emit([result_record(f"max-{args.objective}-influence", inst, value, res.seeds, res.explored, res.elapsed,
                        exact=True)], args)
    if args.trace:
        _trace(inst, res.seeds)
    return EXIT_OK


def cmd_approx(args) -> int:
    inst = _load(args.instance, args.k)
    _need_unanimity(inst, "approximation")
    g, k = inst.graph, inst.k
    if args.algo in ("mis", "vc"):
        if args.algo == "mis":
            witness = max_independent_set_via_influence(g, args.cap)
        else:
            res = exact_open(g, k, args.cap)
            witness = vertex_cover_from_influence(g, res.seeds)
        emit([result_record(args.algo, inst, len(witness), witness, 0, 0.0)], args)
        return EXIT_OK
    if args.algo == "twin":
        res = twin_approx_open(g, k)
        value = res.open_value
    elif args.algo == "closed-twin":
        res = closed_from_open(g, k, twin_approx_open)
        value = res.closed_value
    elif args.algo == "greedy":
        res = bounded_degree_approx(g, k)
        value = res.open_value
    else:
        res = fpt_ratio_approx(g, k, args.ratio, args.cap)
        value = res.open_value
    extra = {"algorithm": args.algo}
    if "branch" in res.info:
        extra["branch"] = res.info["branch"]
    emit([result_record(f"approx-{args.algo}", inst, value, res.seeds, res.explored, res.elapsed, **extra)], args)
    if args.trace:
        _trace(inst, res.seeds)
    return EXIT_OK


def cmd_fpt(args) -> int:
    inst = _load(args.instance, args.k, args.ell)
    _need_unanimity(inst, "fpt-decide")
    if inst.ell is None:
        raise UsageError("fpt-decide needs --ell (or a 'c ell' line in the instance)")
    res = solve_influence_fpt(inst.graph, inst.k, inst.ell, args.cap)
    emit([result_record("k-ell-influence", inst, int(res.answer), res.witness, res.explored, res.elapsed,
                        answer="yes" if res.answer else "no")], args)
    return EXIT_OK


def cmd_generate(args) -> int:
    src = read_instance(args.source).graph
    out = generate(args.kind, src, args.k, args.L, args.P, args.Q)
    params = " ".join(f"{k}={v}" for k, v in sorted(out.params.items()))
    text = serialize_instance(out.instance, [f"generated {args.kind} reduction {params}"])
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        with open(args.output + ".prov", "w", encoding="ascii", newline="\n") as fh:
            fh.write(out.provenance_text())
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args) -> int:
    src = read_instance(args.source).graph
    rep = verify_reduction(args.kind, src, args.k, args.cap, args.L, args.P, args.Q,
                           tuple(args.fault) if args.fault else None)
    emit([rep.record()], args)
    return EXIT_OK if rep.complete else EXIT_CAP


def cmd_bench(args) -> int:
    if args.make_catalog:
        write_catalog_corpus(args.corpus, args.make_catalog, args.k or 0, args.connected, args.max_degree)
    if args.make_random:
        write_random_corpus(args.corpus, args.make_random, args.n, args.p, args.k or 0, args.seed)
    algos = [a for a in args.algo.split(",") if a]
    ratio = parse_ratio(args.ratio)
    rows = bench_suite(args.corpus, algos, args.k, ratio.name if ratio.table is None else "table",
                       ratio.table, args.cap, args.workers)
    if args.format == "records":
        text = "".join(json.dumps(r.as_dict(), sort_keys=True) + "\n" for r in rows)
    else:
        text = format_table(rows, args.timing)
    if args.output:
        with open(args.output, "w", encoding="ascii", newline="\n") as fh:
            fh.write(text)
        write_summary(args.output + ".summary.json", rows)
    else:
        sys.stdout.write(text)
    return EXIT_OK


COMMANDS = {
    "solve": cmd_solve,
    "approx": cmd_approx,
    "fpt-decide": cmd_fpt,
    "generate": cmd_generate,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def run_command(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except SearchTooLarge as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CAP
    except (OSError, ParseError, GraphError, UsageError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run_command())
