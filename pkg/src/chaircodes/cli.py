"""Command-line front end: construct, verify, decode, search, wom.

Reports are JSON on stdout with every number rendered as a decimal string, so
arbitrary-precision values survive any consumer.  Errors go to stderr as JSON
too.  Exit codes: 0 ok, 2 bad input, 3 code not perfect, 4 budget exceeded,
5 verification failed.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import codes, wom
from .budget import resolve_budget
from .chair import Chair, volume
from .errors import (
    BadModulus,
    BadParameters,
    BudgetExceeded,
    ChairCodesError,
    DimensionMismatch,
    HypothesisViolated,
    InvalidChair,
    NonIntegerLattice,
    NonSquare,
    NotATiling,
    NotDiscrete,
    NotInvertible,
    NotPerfect,
    SingularMatrix,
)
from .lattice import Lattice, chair_lattice, torus_tiling_oracle, verify_tiling
from .splitting import SplittingSequence, general_chair_splitting, verify_splitting

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_NOT_PERFECT = 3
EXIT_BUDGET = 4
EXIT_VERIFICATION = 5

_INPUT_ERRORS = (
    InvalidChair,
    BadParameters,
    DimensionMismatch,
    NotDiscrete,
    NotInvertible,
    NonSquare,
    SingularMatrix,
    NonIntegerLattice,
    BadModulus,
    HypothesisViolated,
)


class _Timer:
    def __init__(self) -> None:
        self.start = time.perf_counter()

    def ms(self) -> str:
        return str(int((time.perf_counter() - self.start) * 1000))


def _parse_vector(text: str) -> tuple[Fraction | int, ...]:
    try:
        parts = [p.strip() for p in text.split(",") if p.strip() != ""]
        if not parts:
            raise ValueError("empty vector")
        out = []
        for p in parts:
            f = Fraction(p)
            out.append(int(f) if f.denominator == 1 else f)
        return tuple(out)
    except (ValueError, ZeroDivisionError) as exc:
        raise BadParameters(f"cannot parse vector {text!r}: {exc}") from None


def _parse_int_vector(text: str) -> tuple[int, ...]:
    vec = _parse_vector(text)
    if any(not isinstance(x, int) for x in vec):
        raise BadParameters(f"vector {text!r} must be all integers")
    return vec  # type: ignore[return-value]


def _chair_from_args(args: argparse.Namespace) -> Chair:
    return Chair(_parse_vector(args.l), _parse_vector(args.k))


def _print_report(report: dict, timer: _Timer) -> None:
    report["timings_ms"] = {"total": timer.ms()}
    print(json.dumps(report, sort_keys=True, indent=2))


def _error_exit(exc: BaseException) -> int:
    payload = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    print(json.dumps(payload, sort_keys=True), file=sys.stderr)
    if isinstance(exc, BudgetExceeded):
        return EXIT_BUDGET
    if isinstance(exc, NotPerfect):
        return EXIT_NOT_PERFECT
    if isinstance(exc, NotATiling):
        return EXIT_VERIFICATION
    if isinstance(exc, _INPUT_ERRORS) or isinstance(exc, (ValueError, KeyError, OSError, json.JSONDecodeError)):
        return EXIT_INPUT
    raise exc


def cmd_construct(args: argparse.Namespace) -> int:
    timer = _Timer()
    c = _chair_from_args(args)
    seq: SplittingSequence | None = None
    if args.method in ("auto", "splitting"):
        try:
            seq = general_chair_splitting(c)
        except HypothesisViolated:
            if args.method == "splitting":
                raise
        except NotDiscrete:
            if args.method == "splitting":
                raise
    lat = chair_lattice(c)
    verdict = verify_tiling(lat, c)
    report = {
        "command": "construct",
        "parameters": {"L": [str(x) for x in c.sides], "K": [str(x) for x in c.notch],
                       "method": args.method},
        "artifacts": {
            "generator": lat.to_json_dict()["generator"],
            "volume": str(volume(c)),
            "splitting": seq.to_json_dict() if seq is not None else None,
        },
        "verdicts": {"tiling": verdict.to_json_dict()},
    }
    if seq is not None:
        sv = verify_splitting(c, seq)
        report["verdicts"]["splitting"] = sv.to_json_dict()
    if args.code_out:
        if any(l - k != 1 for l, k in zip(c.sides, c.notch)):
            raise BadParameters("--code-out needs an error-sphere chair: L = K + 1 componentwise")
        code = codes.perfect_code(c.n, c.int_notch())
        with open(args.code_out, "w") as fh:
            json.dump(code.to_json_dict(), fh, sort_keys=True, indent=2)
        report["artifacts"]["code_file"] = args.code_out
    if args.out == "csv":
        lines = [f"volume,{volume(c)}"]
        for row in lat.generator:
            lines.append("generator," + ",".join(str(x) for x in row))
        if seq is not None:
            lines.append(f"m,{seq.modulus}")
            lines.append("beta," + ",".join(str(b) for b in seq.beta))
        lines.append(f"tiling,{'ok' if verdict.ok else 'fail'}")
        print("\n".join(lines))
        return EXIT_OK
    _print_report(report, timer)
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    timer = _Timer()
    c = _chair_from_args(args)
    verdicts: dict = {}
    if args.m is not None or args.beta is not None:
        if args.m is None or args.beta is None:
            raise BadParameters("--m and --beta must be given together")
        seq = SplittingSequence(int(args.m), _parse_int_vector(args.beta))
        verdicts["splitting"] = verify_splitting(c, seq)
        lat = None
    else:
        if args.generator:
            with open(args.generator) as fh:
                lat = Lattice.from_json_dict(json.load(fh))
        else:
            lat = chair_lattice(c)
        verdicts["tiling"] = verify_tiling(lat, c)
        if args.torus and lat.is_integer and c.is_discrete:
            verdicts["torus"] = torus_tiling_oracle(lat, c)
    report = {
        "command": "verify",
        "parameters": {"L": [str(x) for x in c.sides], "K": [str(x) for x in c.notch]},
        "artifacts": {"generator": lat.to_json_dict()["generator"] if lat else None},
        "verdicts": {k: v.to_json_dict() for k, v in verdicts.items()},
    }
    _print_report(report, timer)
    return EXIT_OK if all(v.ok for v in verdicts.values()) else EXIT_VERIFICATION


def cmd_decode(args: argparse.Namespace) -> int:
    timer = _Timer()
    with open(args.code) as fh:
        code = codes.LatticeCode.from_json_dict(json.load(fh))
    received = _parse_int_vector(args.received)
    if len(received) != code.sphere.n:
        raise BadParameters(f"received word has {len(received)} cells, code has {code.sphere.n}")
    codeword, error = codes.decode(code, received)
    report = {
        "command": "decode",
        "parameters": {"code": args.code, "received": [str(x) for x in received]},
        "artifacts": {
            "codeword": [str(x) for x in codeword],
            "error": [str(x) for x in error],
        },
        "verdicts": {},
    }
    _print_report(report, timer)
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    timer = _Timer()
    budget = int(args.budget) if args.budget is not None else resolve_budget()
    if args.mode == "divisibility":
        if args.t != args.n - 2:
            raise BadParameters(f"divisibility test covers t = n-2 only; got t={args.t}, n={args.n}")
        verdict = codes.nonexistence_divisibility_check(args.n, args.ell)
    else:
        verdict = codes.exhaustive_perfect_search(args.n, args.t, args.ell, budget)
    report = {
        "command": "search",
        "parameters": {"n": str(args.n), "t": str(args.t), "ell": str(args.ell),
                       "mode": args.mode, "budget": str(budget)},
        "artifacts": {},
        "verdicts": {"search": verdict.to_json_dict()},
    }
    _print_report(report, timer)
    return EXIT_OK


def cmd_wom(args: argparse.Namespace) -> int:
    timer = _Timer()
    if args.q < 1:
        raise BadParameters(f"need q >= 1, got {args.q}")
    c = _chair_from_args(args)
    lat = chair_lattice(c)
    coloring = wom.build_coloring(lat, c, args.q)
    out_path = args.output or ("coloring.csv" if args.out == "csv" else "coloring.bin")
    if args.out == "csv":
        with open(out_path, "w") as fh:
            rows = wom.write_csv(coloring, fh)
    else:
        with open(out_path, "wb") as fh:
            rows = wom.write_binary(coloring, fh)
    report = {
        "command": "wom",
        "parameters": {"L": [str(x) for x in c.sides], "K": [str(x) for x in c.notch],
                       "q": str(args.q), "out": args.out},
        "artifacts": {"colors": str(coloring.sigma), "cells": str(rows), "file": out_path},
        "verdicts": {},
    }
    rc = EXIT_OK
    if args.check:
        verdict = wom.check_write_guarantee(coloring, c)
        report["verdicts"]["write_guarantee"] = verdict.to_json_dict()
        if not verdict.ok:
            rc = EXIT_VERIFICATION
    _print_report(report, timer)
    return rc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chaircodes",
        description="Chair tilings of Z^n, splitting sequences, perfect "
        "limited-magnitude asymmetric codes, and WOM colorings.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("construct", help="build the tiling lattice and splitting for a chair")
    p.add_argument("--l", required=True, help="comma-separated box sides (ints or fractions)")
    p.add_argument("--k", required=True, help="comma-separated notch sides")
    p.add_argument("--method", choices=["auto", "splitting", "lattice"], default="auto")
    p.add_argument("--out", choices=["json", "csv"], default="json")
    p.add_argument("--code-out", help="also write the perfect-code JSON (needs L = K + 1)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="verify a tiling or a splitting against a chair")
    p.add_argument("--l", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--generator", help="lattice JSON file; default is the chair lattice")
    p.add_argument("--m", help="splitting modulus (with --beta)")
    p.add_argument("--beta", help="comma-separated splitting residues (with --m)")
    p.add_argument("--torus", action="store_true", help="also run the torus oracle")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("decode", help="decode a received word with a perfect code")
    p.add_argument("--code", required=True, help="code JSON file")
    p.add_argument("--received", required=True, help="comma-separated received word")
    p.set_defaults(func=cmd_decode)

    p = sub.add_parser("search", help="nonexistence tests for perfect codes")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--mode", choices=["divisibility", "exhaustive"], default="divisibility")
    p.add_argument("--budget", type=int)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("wom", help="emit the write-once-memory coloring of a chair tiling")
    p.add_argument("--l", required=True)
    p.add_argument("--k", required=True)
    p.add_argument("--q", type=int, required=True, help="levels per cell")
    p.add_argument("--out", choices=["csv", "bin"], default="csv")
    p.add_argument("--output", help="output file (default coloring.csv / coloring.bin)")
    p.add_argument("--check", action="store_true", help="also verify the write guarantee")
    p.set_defaults(func=cmd_wom)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ChairCodesError, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        return _error_exit(exc)


def entry() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
