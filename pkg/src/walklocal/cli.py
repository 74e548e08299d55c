"""Command-line entry point.

Subcommands: ``check``, ``simulate``, ``compile``, ``lemmas`` and ``sweep``.
Exit status is 0 when every requested certification passes, 1 when one
fails and 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .compiler import certify_plan, check_appendix_lemmas, compile_plan
from .config import DEFAULT
from .correspondence import simulate_correspondence
from .ensembles import random_state, rng_for
from .errors import WalkLocalError
from .graph import load_graph
from .locality import check_h_local, check_z_local, find_c_local_partition
from .spectral import load_matrix
from .sweep import sweep_scaling

EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


def _common(p: argparse.ArgumentParser, matrix_help: str) -> None:
    p.add_argument("--graph", required=True, type=Path, help="edge-list text or JSON graph")
    p.add_argument("--matrix", required=True, type=Path, help=matrix_help)
    p.add_argument("--tol", type=float, default=None, help="override the equality tolerance")
    p.add_argument("--out", type=Path, default=None, help="write output here instead of stdout")
    p.add_argument("--format", choices=("json", "csv"), default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="walklocal", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="Z-, C- and H-locality verdicts for a unitary")
    _common(p, "unitary matrix JSON")

    p = sub.add_parser("simulate", help="run the local walk against exp(-iHt)")
    _common(p, "Hermitian matrix JSON")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--delta", type=float, default=None)
    p.add_argument("--tau", type=int, default=None)
    p.add_argument("--eps", type=float, default=None)
    p.add_argument("--seed", type=int, default=0, help="seed for the random initial state")
    p.add_argument("--allow-odd-tau", action="store_true")

    p = sub.add_parser("compile", help="compile exp(-iHt) into certified C-local factors")
    _common(p, "Hermitian matrix JSON")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--no-lazy-ok", action="store_true",
                   help="do not echo the no_lazy warning on stderr for tree graphs")

    p = sub.add_parser("lemmas", help="S-walk versus Q-walk residuals")
    _common(p, "Hermitian matrix JSON")
    p.add_argument("--tau", type=int, nargs="+", default=[1, 2, 3])

    p = sub.add_parser("sweep", help="tau and error versus delta, as CSV")
    _common(p, "Hermitian matrix JSON")
    p.add_argument("--t", type=float, required=True)
    p.add_argument("--delta", type=float, nargs="+", required=True)
    p.add_argument("--seed", type=int, nargs="+", default=[0])
    return parser


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _dump(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _run(args) -> int:
    tol = DEFAULT.with_overrides(eq=args.tol)
    fmt = args.format or ("csv" if args.command == "sweep" else "json")
    if fmt == "csv" and args.command != "sweep":
        raise WalkLocalError("csv output is only available for sweep")
    g = load_graph(args.graph)
    m = load_matrix(args.matrix)

    if args.command == "check":
        verdicts = [check_z_local(m, g, tol.eq), find_c_local_partition(m, g, tol.eq),
                    check_h_local(m, g, tol.eq, tol)]
        _emit(_dump({"verdicts": [v.to_json() for v in verdicts]}), args.out)
        failed = [v for v in verdicts if not v.passed]
        for v in failed:
            print(v.summary(), file=sys.stderr)
        return EXIT_FAILED if failed else EXIT_OK

    if args.command == "simulate":
        if args.t < 0:
            raise WalkLocalError("t must be nonnegative")
        if args.delta is None and args.tau is None:
            raise WalkLocalError("simulate needs --delta or --tau")
        phi = random_state(g.n, rng_for(args.seed))
        r = simulate_correspondence(m, args.t, g, phi, args.delta, tau=args.tau,
                                    eps=args.eps, allow_odd_tau=args.allow_odd_tau, tol=tol)
        _emit(_dump(r.to_json()), args.out)
        if r.error > r.bound:
            print(f"measured error {r.error:.3e} exceeds bound {r.bound:.3e}", file=sys.stderr)
            return EXIT_FAILED
        return EXIT_OK

    if args.command == "compile":
        plan = compile_plan(m, args.t, g, args.delta, tol)
        _emit(_dump(plan.to_json()), args.out)
        if plan.no_lazy and not args.no_lazy_ok:
            for w in plan.warnings:
                print("warning: " + w, file=sys.stderr)
        failed = [v for v in certify_plan(plan, g, tol) if not v.passed]
        for v in failed:
            print(v.summary(), file=sys.stderr)
        return EXIT_FAILED if failed else EXIT_OK

    if args.command == "lemmas":
        report = check_appendix_lemmas(m, g, args.tau, tol)
        _emit(_dump(report.to_json()), args.out)
        if not report.passed():
            print("lemma residuals exceed tolerance", file=sys.stderr)
            return EXIT_FAILED
        return EXIT_OK

    result = sweep_scaling(g, m, args.t, args.delta, args.seed)
    if fmt == "csv":
        _emit(result.to_csv(), args.out)
    else:
        _emit(_dump({"rows": result.rows, "slope": result.slope}), args.out)
    if result.slope is not None:
        print(f"fitted log-log slope of tau vs delta: {result.slope:.4f}", file=sys.stderr)
    bad = [r for r in result.rows if r["measured_error"] > r["bound"]]
    return EXIT_FAILED if bad else EXIT_OK


def main(argv=None) -> int:
    logging.basicConfig(level=logging.ERROR, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        return _run(args)
    except (WalkLocalError, OSError, ValueError, IndexError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
