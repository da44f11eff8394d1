"""JSON wire formats: tensors (dense and parts), spectra, suite reports.

Readers validate curvature symmetries on load; writers emit canonical JSON
(sorted keys, no whitespace) so identical inputs give byte-identical output.
"""

from __future__ import annotations

import json

import numpy as np

from .operators import Spectrum
from .tensors import (
    AlgebraicCurvatureTensor,
    CurvatureDecomposition,
    InvalidTensorError,
    SymTwoTensor,
    reassemble,
    validate,
)

__all__ = [
    "FormatError",
    "tensor_to_dict",
    "decomposition_to_dict",
    "tensor_from_dict",
    "spectrum_to_dict",
    "spectrum_from_dict",
    "dumps_canonical",
]

LOAD_TOL = 1e-8


class FormatError(ValueError):
    """Malformed or inconsistent JSON payload."""


def tensor_to_dict(T: AlgebraicCurvatureTensor) -> dict:
    return {
        "n": T.n,
        "format": "dense",
        "components": [float(x) for x in T.components.ravel()],
    }


def decomposition_to_dict(dec: CurvatureDecomposition) -> dict:
    return {
        "n": dec.n,
        "format": "parts",
        "scalar": float(dec.scalar),
        "traceless_ricci": [float(x) for x in dec.traceless_ricci.matrix.ravel()],
        "weyl": [float(x) for x in dec.weyl.components.ravel()],
    }


def _infer_n(count: int, power: int) -> int:
    n = round(count ** (1.0 / power))
    for cand in (n - 1, n, n + 1):
        if cand >= 1 and cand**power == count:
            return cand
    raise FormatError(f"array of length {count} is not a perfect {power}th power")


def tensor_from_dict(d: dict, tol: float = LOAD_TOL) -> AlgebraicCurvatureTensor:
    """Parse either wire format and validate symmetries at ``tol``."""
    if not isinstance(d, dict):
        raise FormatError("expected a JSON object")
    fmt = d.get("format", "dense")
    try:
        if fmt == "dense":
            comp = np.asarray(d["components"], float)
            n = int(d.get("n", _infer_n(comp.size, 4)))
            T = AlgebraicCurvatureTensor(n, comp.reshape((n,) * 4))
        elif fmt == "parts":
            weyl = np.asarray(d["weyl"], float)
            ric0 = np.asarray(d["traceless_ricci"], float)
            n = int(d.get("n", _infer_n(ric0.size, 2)))
            ric0 = ric0.reshape((n, n))
            if abs(float(np.trace(ric0))) > tol * max(1.0, float(np.abs(ric0).max(initial=0.0))):
                raise FormatError("traceless_ricci part has a nonzero trace")
            dec = CurvatureDecomposition(
                float(d["scalar"]),
                SymTwoTensor(n, ric0),
                AlgebraicCurvatureTensor(n, weyl.reshape((n,) * 4)),
            )
            T = reassemble(dec)
        else:
            raise FormatError(f"unknown format {fmt!r}")
    except (KeyError, TypeError, ValueError) as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(f"malformed tensor payload: {exc}") from exc
    if not np.all(np.isfinite(T.components)):
        raise FormatError("tensor contains non-finite components")
    bad = validate(T, tol)
    if bad:
        raise InvalidTensorError(f"loaded tensor violates: {', '.join(bad)}")
    return T


def spectrum_to_dict(sp: Spectrum, n: int) -> dict:
    return {
        "n": n,
        "N": len(sp.values),
        "eigenvalues": [float(v) for v in sp.values],
        "mean": float(sp.mean),
    }


def spectrum_from_dict(d: dict) -> Spectrum:
    try:
        vals = np.sort(np.asarray(d["eigenvalues"], float))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed spectrum payload: {exc}") from exc
    if not np.all(np.isfinite(vals)):
        raise FormatError("spectrum contains non-finite values")
    return Spectrum(vals, float(vals.mean()))


def dumps_canonical(obj) -> str:
    """Deterministic JSON: sorted keys, compact separators, trailing newline."""
    text = json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)
    return text + "\n"
