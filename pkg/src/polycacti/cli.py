"""Command-line front end: compute, generate, enumerate, count, verify, table."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from pathlib import Path
from typing import Sequence

from . import constructions as cons
from .enumeration import BudgetExceeded, canonical_code, code_hash, count_cacti, enumerate_cacti
from .graph import CactusError, GraphError, format_graph, parse_graph
from .indices import NAMED_INDICES, IndexParams, general_sombor, named_index
from .verification import (
    THEOREMS,
    BoundViolation,
    VerificationReport,
    reports_to_csv,
    reports_to_json,
    verify,
)

DEFAULT_ALPHA = 2.0
DEFAULT_BETA = 0.5

GENERATORS = {
    "star": cons.star_cactus,
    "chain_adjacent": cons.chain_adjacent,
    "chain_nonadjacent": cons.chain_nonadjacent,
    "nice_saturated": cons.nice_saturated,
}

TABLE_KINDS = {
    "min_alpha": "thm_2_1",
    "min_alpha_sombor": "thm_2_1",
    "max_general": "thm_3_1",
    "min_general": "cor_4_1",
}

DOMAIN_ERRORS = (ValueError, GraphError, CactusError, BudgetExceeded, BoundViolation, OSError)


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def _int_range(text: str) -> range:
    lo, sep, hi = text.partition("..")
    try:
        a = int(lo)
        b = int(hi) if sep else a
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected N or A..B, got {text!r}") from None
    if b < a:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(a, b + 1)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _threads(value: int | None) -> int:
    return value if value is not None else (os.cpu_count() or 1)


def cmd_compute(args: argparse.Namespace) -> int:
    g = parse_graph(Path(args.graph).read_text(encoding="utf-8"))
    if args.index:
        if args.alpha is not None or (args.beta is not None and args.index != "general_sum_connectivity"):
            raise ValueError("--index cannot be combined with --alpha/--beta")
        value = named_index(g, args.index, beta=args.beta)
    else:
        alpha = DEFAULT_ALPHA if args.alpha is None else args.alpha
        beta = DEFAULT_BETA if args.beta is None else args.beta
        value = general_sombor(g, IndexParams(alpha, beta))
    if args.format == "json":
        print(json.dumps({"value": value}))
    else:
        print(_fmt(value))
    return 0


def cmd_generate(args: argparse.Namespace) -> int:
    c = GENERATORS[args.family](args.n, args.k)
    _emit(format_graph(c.graph), args.out)
    return 0


def cmd_enumerate(args: argparse.Namespace) -> int:
    outdir = Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    for i, c in enumerate(enumerate_cacti(args.n, args.k, workers=_threads(args.threads))):
        if args.limit is not None and i >= args.limit:
            break
        code = canonical_code(c)
        if outdir:
            (outdir / f"{code_hash(code)}.edges").write_text(
                f"# {code}\n" + format_graph(c.graph), encoding="utf-8"
            )
        else:
            print(code)
    return 0


def cmd_count(args: argparse.Namespace) -> int:
    print(count_cacti(args.n, args.k, workers=_threads(args.threads)))
    return 0


def _report_text(rep: VerificationReport) -> str:
    lines = [
        f"theorem: {rep.theorem}",
        f"n: {rep.n}",
        f"k: {rep.k}",
        f"alpha: {_fmt(rep.alpha)}",
        f"beta: {_fmt(rep.beta)}",
        f"empirical: {_fmt(rep.empirical_extremum)}",
        f"bound: {_fmt(rep.bound)}",
        f"gap: {rep.gap:.3e}",
        f"num_extremal: {len(rep.extremal_codes)}",
        f"match: {str(rep.characterization_match).lower()}"
        + ("" if rep.characterization_claimed else " (informational)"),
        f"classes_checked: {rep.classes_checked}",
    ]
    if rep.extrapolated:
        lines.append("note: EXTRAPOLATION outside the proven parameter range")
    lines.extend(f"warning: {w}" for w in rep.warnings)
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace) -> int:
    alpha = DEFAULT_ALPHA if args.alpha is None else args.alpha
    beta = args.beta
    if beta is None and args.theorem != "thm_2_1":
        beta = DEFAULT_BETA
    rep = verify(
        args.theorem, args.n, args.k, alpha, beta,
        explore=args.explore, workers=_threads(args.threads),
    )
    if args.csv:
        Path(args.csv).write_text(reports_to_csv([rep]), encoding="utf-8")
    if args.format == "json":
        sys.stdout.write(reports_to_json([rep]))
    elif args.format == "csv":
        sys.stdout.write(reports_to_csv([rep]))
    else:
        sys.stdout.write(_report_text(rep))
    return 0 if rep.passed or rep.extrapolated else 1


def _table_bound(theorem: str, n: int, k: int, alpha: float, beta: float) -> float:
    if theorem == "thm_2_1":
        kind, params = cons.BoundKind.MIN_ALPHA_SOMBOR, IndexParams.alpha_sombor(alpha)
    elif theorem == "thm_3_1":
        kind, params = cons.BoundKind.MAX_GENERAL, IndexParams(alpha, beta)
    else:
        kind, params = cons.min_general_kind(k), IndexParams(alpha, beta)
    return cons.bound_value(cons.BoundSpec(kind, n, k, params))


def cmd_table(args: argparse.Namespace) -> int:
    theorem = TABLE_KINDS[args.kind]
    alpha = DEFAULT_ALPHA if args.alpha is None else args.alpha
    beta = DEFAULT_BETA if args.beta is None else args.beta
    if theorem == "thm_2_1":
        beta = 1 / alpha
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    header = ["n", "k", "alpha", "beta", "bound"]
    if args.verify:
        header += ["empirical", "gap", "num_extremal", "match", "classes_checked"]
    w.writerow(header)
    ok = True
    for n in args.n:
        for k in args.k:
            row = [str(n), str(k), _fmt(alpha), _fmt(beta), _fmt(_table_bound(theorem, n, k, alpha, beta))]
            if args.verify:
                rep = verify(theorem, n, k, alpha, beta, workers=_threads(args.threads))
                ok = ok and rep.passed
                row += [
                    _fmt(rep.empirical_extremum), f"{rep.gap:.3e}", str(len(rep.extremal_codes)),
                    str(rep.characterization_match).lower(), str(rep.classes_checked),
                ]
            w.writerow(row)
    _emit(buf.getvalue(), args.out)
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycacti",
        description="General Sombor indices on k-polygonal cacti.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def nk(p: argparse.ArgumentParser) -> None:
        p.add_argument("--n", type=int, required=True, help="number of polygons")
        p.add_argument("--k", type=int, required=True, help="polygon size")

    def params(p: argparse.ArgumentParser) -> None:
        p.add_argument("--alpha", type=float, default=None, help=f"default {DEFAULT_ALPHA:g}")
        p.add_argument("--beta", type=float, default=None, help=f"default {DEFAULT_BETA:g}")

    def threads(p: argparse.ArgumentParser) -> None:
        p.add_argument("--threads", type=int, default=None, help="enumeration workers (default: CPU count)")

    p = sub.add_parser("compute", help="index value of an edge-list graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--index", choices=sorted(NAMED_INDICES))
    params(p)
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("generate", help="write an extremal cactus as an edge list")
    p.add_argument("family", choices=sorted(GENERATORS))
    nk(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("enumerate", help="list all cacti up to isomorphism")
    nk(p)
    p.add_argument("--limit", type=int)
    p.add_argument("--out", help="directory; one edge-list file per class")
    threads(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("count", help="number of isomorphism classes")
    nk(p)
    threads(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("verify", help="check a bound against exhaustive enumeration")
    p.add_argument("theorem", choices=THEOREMS)
    nk(p)
    params(p)
    p.add_argument("--csv", help="also write the report row to this CSV file")
    p.add_argument("--explore", action="store_true", help="allow parameters outside the proven range")
    p.add_argument("--format", choices=["text", "csv", "json"], default="text")
    threads(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("table", help="closed-form bounds over a grid of (n, k)")
    p.add_argument("kind", choices=sorted(TABLE_KINDS))
    p.add_argument("--n", type=_int_range, required=True, help="N or A..B")
    p.add_argument("--k", type=_int_range, required=True, help="K or C..D")
    params(p)
    p.add_argument("--verify", action="store_true", help="add empirical extremum columns")
    p.add_argument("--out")
    threads(p)
    p.set_defaults(func=cmd_table)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DOMAIN_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
