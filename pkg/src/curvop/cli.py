"""Batch command line front end emitting canonical JSON reports.

Exit codes: 0 success / condition holds, 1 failed check, 2 bad flags or
malformed input, 3 numerical failure.  ``--input -`` reads stdin; the env
var CURVOP_TOL overrides the default tolerance.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

import numpy as np

from . import fourdim, identities, jsonio, models
from .operators import k_nonnegative, second_kind, spectrum
from .tensors import DEFAULT_TOL, InvalidTensorError, ShapeError
from .weighted import WeightedSumSpec, best_lower_bound

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_USAGE = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


def _default_tol() -> float:
    env = os.environ.get("CURVOP_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        return float(env)
    except ValueError as exc:
        raise UsageError(f"bad CURVOP_TOL value {env!r}") from exc


def _parse_number(text: str):
    """Decimal or rational 'p/q' flag value."""
    try:
        if "/" in text:
            return Fraction(text)
        return float(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad numeric value {text!r}") from exc


def _read_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise UsageError(f"cannot read {path!r}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"invalid JSON in {path!r}: {exc}") from exc


def _load_tensor(path: str):
    try:
        return jsonio.tensor_from_dict(_read_json(path), tol=max(_default_tol(), 1e-10))
    except (jsonio.FormatError, InvalidTensorError, ShapeError) as exc:
        raise UsageError(str(exc)) from exc


def _emit(obj) -> None:
    sys.stdout.write(jsonio.dumps_canonical(obj))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="curvop", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("model", help="emit a model tensor as JSON")
    p.add_argument("--name", required=True)
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--c", type=float, default=None)
    p.add_argument("--k1", type=float, default=None)
    p.add_argument("--k2", type=float, default=None)
    p.add_argument("--k", type=float, default=None)

    p = sub.add_parser("spectrum", help="second-kind spectrum of a tensor")
    p.add_argument("--input", required=True)

    p = sub.add_parser("check-knn", help="fractional k-nonnegativity verdict")
    p.add_argument("--input", required=True)
    p.add_argument("--k", required=True)

    p = sub.add_parser("cone", help="4D cone condition verdict")
    p.add_argument("--input", required=True)

    p = sub.add_parser("classify4d", help="half-Weyl spectra and branch hint")
    p.add_argument("--input", required=True)

    p = sub.add_parser("bound", help="best weighted lower bound of a spectrum")
    p.add_argument("--spectrum", required=True)
    p.add_argument("--omega", required=True)
    p.add_argument("--total", required=True)

    p = sub.add_parser("verify", help="run the identity and inequality suite")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--suite", default="all")
    return parser


def _model_args(args) -> models.ModelSpec:
    name = args.name
    params: dict = {}
    if name == "s2xs2":
        name = "product_spheres"
        params = {"k1": args.k1 if args.k1 is not None else 1.0,
                  "k2": args.k2 if args.k2 is not None else 1.0}
        return models.ModelSpec(name, 4, params)
    if name in ("sphere", "hyperbolic", "cp2") and args.c is not None:
        params["c"] = args.c
    if name == "product_spheres":
        if args.k1 is not None:
            params["k1"] = args.k1
        if args.k2 is not None:
            params["k2"] = args.k2
    if name == "s1_x_s3" and args.k is not None:
        params["k"] = args.k
    try:
        return models.ModelSpec(name, args.n, params)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _run(args) -> int:
    if args.command == "model":
        _emit(jsonio.tensor_to_dict(models.build(_model_args(args))))
        return EXIT_OK

    if args.command == "spectrum":
        T = _load_tensor(args.input)
        _emit(jsonio.spectrum_to_dict(spectrum(second_kind(T)), T.n))
        return EXIT_OK

    if args.command == "check-knn":
        T = _load_tensor(args.input)
        k = _parse_number(args.k)
        sp = spectrum(second_kind(T))
        try:
            holds, total = k_nonnegative(sp, k)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit({"k": float(k), "holds": holds, "weighted_sum": total})
        return EXIT_OK if holds else EXIT_CHECK_FAILED

    if args.command == "cone":
        T = _load_tensor(args.input)
        if T.n != 4:
            raise UsageError(f"cone condition needs n = 4, got n = {T.n}")
        cc = fourdim.cone_condition(spectrum(second_kind(T)), _default_tol())
        _emit({"lhs": cc.lhs, "rhs": cc.rhs, "holds": cc.holds})
        return EXIT_OK if cc.holds else EXIT_CHECK_FAILED

    if args.command == "classify4d":
        T = _load_tensor(args.input)
        if T.n != 4:
            raise UsageError(f"classify4d needs n = 4, got n = {T.n}")
        _emit(fourdim.classify4d(T))
        return EXIT_OK

    if args.command == "bound":
        payload = _read_json(args.spectrum)
        sp = jsonio.spectrum_from_dict(payload)
        omega = _parse_number(args.omega)
        total = _parse_number(args.total)
        try:
            spec = WeightedSumSpec(omega, total)
            bound = best_lower_bound(sp, spec)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit(
            {
                "omega": float(omega),
                "total": float(total),
                "bound": bound.value,
                "certified_nonnegative": bound.certified,
            }
        )
        return EXIT_OK

    if args.command == "verify":
        tol = args.tol if args.tol is not None else _default_tol()
        try:
            reports = identities.run_suite(
                args.n, args.trials, args.seed, tol=tol, suite=args.suite
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit(identities.report_to_dict(args.n, args.seed, reports))
        return EXIT_OK if all(r.passed for r in reports) else EXIT_CHECK_FAILED

    raise UsageError(f"unknown command {args.command!r}")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return _run(args)
    except UsageError as exc:
        print(f"curvop: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (np.linalg.LinAlgError, FloatingPointError, ArithmeticError) as exc:
        print(f"curvop: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
