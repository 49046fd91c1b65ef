"""Command-line front end (``python -m opdist``).

Exit codes: 0 success, 1 a checked relation failed, 2 unusable input
(parse errors, unknown example names, missing identification operators).
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import asdict

from . import __version__
from .catalog import EXAMPLES, run_example
from .cmf import Cmf, cmf_from_hermitian
from .convergence import equivalence_check
from .errors import OpDistError
from .io import (
    CSV_HEADER,
    FormatError,
    cmf_csv_row,
    dumps,
    encode,
    load_input,
    rows_to_csv,
    sequence_from_json,
)
from .op_distances import SearchConfig, inequality_report
from .verify import PROPERTIES, RunConfig, run_battery

__all__ = ["main", "build_parser"]

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    """Raised for anything that should end with exit code 2."""


def _globals(p, suppress):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--seed", type=int, default=d(None), help="random seed (verify default 42, search default 0)")
    p.add_argument("--tol", type=float, default=d(None), help="tolerance of the checked relations")
    p.add_argument("--format", choices=("json", "csv"), default=d("json"))
    p.add_argument("--out", default=d(None), help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="opdist", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"opdist {__version__}")
    _globals(p, suppress=False)
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        sp = sub.add_parser(name, help=help_)
        _globals(sp, suppress=True)
        return sp

    sp = add("dist", "distances and checked relations for two operator or Cmf files")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--restarts", type=int, default=8)
    sp.add_argument("--steps", type=int, default=500)
    sp.add_argument("--target-dim", type=int, default=None)

    sp = add("cmf", "Cmf-level distances (operator files are read through their spectra)")
    sp.add_argument("a")
    sp.add_argument("b")
    sp.add_argument("--pair-id", default="0")

    sp = add("verify", "randomised property batteries")
    sp.add_argument("--batch", type=int, default=200)
    sp.add_argument("--max-dim", type=int, default=8)
    sp.add_argument("--only", nargs="+", choices=list(PROPERTIES), default=None)
    sp.add_argument("--perturb-nagy", action="store_true",
                    help="inject a wrong Nagy factorisation (harness self-test)")

    sp = add("examples", "worked examples: known values against computed values")
    sp.add_argument("name", nargs="?", default="all")

    sp = add("converge", "defect lists and verdicts for an operator sequence file")
    sp.add_argument("file")
    return p


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        return load_input(path)
    except OpDistError as exc:
        raise InputError(str(exc)) from exc


def _as_cmf(kind, obj) -> Cmf:
    if kind == "cmf":
        return obj
    try:
        return cmf_from_hermitian(obj)
    except OpDistError as exc:
        raise InputError(f"operator is not usable as a Cmf: {exc}") from exc


def cmd_dist(args) -> int:
    (ka, A), (kb, B) = _load(args.a), _load(args.b)
    if ka != kb:
        raise InputError("cannot mix an operator file with a Cmf file")
    cfg = SearchConfig(target_dim=args.target_dim, restarts=args.restarts, steps=args.steps,
                       seed=args.seed if args.seed is not None else 0,
                       **({"chain_tol": args.tol} if args.tol is not None else {}))
    rep = inequality_report(A, B, cfg)
    d = rep.to_dict()
    if args.format == "csv":
        scalars = [k for k in d if k != "chain_verdicts"]
        rows = [{"quantity": k, "value": d[k]} for k in scalars]
        rows += [{"quantity": v["name"], "value": v["status"]} for v in d["chain_verdicts"]]
        _emit(args, rows_to_csv(rows, ["quantity", "value"]))
    else:
        _emit(args, dumps(d))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_cmf(args) -> int:
    a1 = _as_cmf(*_load(args.a))
    a2 = _as_cmf(*_load(args.b))
    row = cmf_csv_row(args.pair_id, a1, a2)
    if args.format == "csv":
        _emit(args, rows_to_csv([row], CSV_HEADER))
    else:
        _emit(args, dumps(row))
    return EXIT_OK


def cmd_verify(args) -> int:
    kw = {"batch": args.batch, "max_dim": args.max_dim, "perturb_nagy": args.perturb_nagy}
    if args.seed is not None:
        kw["seed"] = args.seed
    if args.tol is not None:
        kw["tol"] = args.tol
    cfg = RunConfig(**kw)
    if cfg.batch < 0 or cfg.max_dim < 1:
        raise InputError("batch must be >= 0 and max-dim >= 1")
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        results = run_battery(cfg, args.only)
    for w in caught:
        print(f"warning: {w.message}", file=sys.stderr)
    if args.format == "csv":
        rows = [{k: r.to_dict()[k] for k in ("name", "passed", "total", "worst_slack")}
                for r in results]
        _emit(args, rows_to_csv(rows, ["name", "passed", "total", "worst_slack"]))
    else:
        _emit(args, dumps({"config": asdict(cfg),
                           "properties": [r.to_dict() for r in results],
                           "ok": all(r.ok for r in results)}))
    failed = [r for r in results if not r.ok]
    for r in failed:
        print(f"violated: {r.name} ({r.total - r.passed} of {r.total}), "
              f"first instance: {json.dumps(encode(r.failures[0]), sort_keys=True)}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_examples(args) -> int:
    try:
        rows = run_example(args.name)
    except KeyError:
        names = "\n".join(f"  {k}: {v[0]}" for k, v in EXAMPLES.items())
        raise InputError(f"unknown example {args.name!r}; registered examples:\n{names}") from None
    if args.format == "csv":
        _emit(args, rows_to_csv(rows, ["id", "description", "expected", "computed",
                                       "abs_diff", "tol", "relation", "status"]))
    else:
        _emit(args, dumps(rows))
    return EXIT_OK if all(r["status"] == "pass" for r in rows) else EXIT_FAIL


def cmd_converge(args) -> int:
    try:
        with open(args.file) as fh:
            seq = sequence_from_json(json.load(fh))
        rep = equivalence_check(seq, **({"tol": args.tol} if args.tol is not None else {}))
    except (OSError, ValueError, OpDistError) as exc:
        raise InputError(str(exc)) from exc
    d = rep.to_dict()
    if args.format == "csv":
        rows = [{"n": n + 1, "weidmann": w, "que": q, "que_adjoint": qa, "proof_bound": pb,
                 "normalized": nm}
                for n, (w, q, qa, pb, nm) in enumerate(zip(
                    d["weidmann_defects"], d["que_defects"], d["que_defects_adjoint"],
                    d["proof_bounds"], d["normalized"]))]
        _emit(args, rows_to_csv(rows, ["n", "weidmann", "que", "que_adjoint",
                                       "proof_bound", "normalized"]))
    else:
        _emit(args, dumps(d))
    bad = [k for k, v in d["verdicts"].items() if isinstance(v, dict) and v["status"] == "fail"]
    return EXIT_FAIL if bad else EXIT_OK


COMMANDS = {"dist": cmd_dist, "cmf": cmd_cmf, "verify": cmd_verify,
            "examples": cmd_examples, "converge": cmd_converge}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
