"""Weighted eigenvalue sums with a per-weight cap and a total budget.

A weight vector is admissible for ``(omega, total)`` when every weight lies
in [0, omega] and the weights sum to ``total``.  The central fact is the
closed-form lower bound over sorted eigenvalues, which certifies sign
statements from fractional k-nonnegativity of the spectrum.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

import numpy as np

from .operators import Spectrum, k_nonnegative

__all__ = [
    "WeightedSumSpec",
    "BestBound",
    "lower_bound",
    "best_lower_bound",
    "combine",
    "threshold",
    "scalar_weight_spec",
    "ricci_weight_spec",
    "action_norm_spec",
    "bochner_weight_spec",
]


@dataclass(frozen=True)
class WeightedSumSpec:
    """Cap and budget of a nonnegative weight vector: 0 <= omega <= total."""

    omega: float | Fraction
    total: float | Fraction

    def __post_init__(self):
        if self.omega < 0:
            raise ValueError(f"highest weight must be nonnegative, got {self.omega}")
        if self.omega > self.total:
            raise ValueError(
                f"highest weight {self.omega} exceeds total weight {self.total}"
            )


class BestBound(NamedTuple):
    value: float
    certified: bool


def _values(sp) -> np.ndarray:
    if isinstance(sp, Spectrum):
        return sp.values
    return np.sort(np.asarray(sp, float))


def lower_bound(sp, spec: WeightedSumSpec, m: int) -> float:
    """Closed-form bound ``(S - m O) l_{m+1} + O sum_{i<=m} l_i``.

    Valid for integer 1 <= m <= N-1 with nonnegative remainder S - m O;
    every admissible weighted sum of the sorted eigenvalues dominates it.
    """
    vals = _values(sp)
    nvals = len(vals)
    if not (1 <= m <= nvals - 1):
        raise ValueError(f"m={m} out of range [1, {nvals - 1}]")
    rem = float(spec.total) - m * float(spec.omega)
    if rem < 0:
        raise ValueError(f"remainder total - m*omega is negative for m={m}")
    return rem * float(vals[m]) + float(spec.omega) * float(vals[:m].sum())


def best_lower_bound(sp, spec: WeightedSumSpec) -> BestBound:
    """Largest closed-form bound over admissible m, plus a sign certificate.

    The value equals the exact minimum of the weight program
    ``min sum w_a l_a`` over 0 <= w_a <= omega, sum w_a = total.  The
    certificate records whether (total/omega)-nonnegativity of the spectrum
    holds, which forces the value to be nonnegative.
    """
    vals = _values(sp)
    nvals = len(vals)
    omega = float(spec.omega)
    total = float(spec.total)
    if omega == 0.0:
        # only the zero weight vector is admissible
        if total > 0.0:
            raise ValueError("positive budget infeasible with zero cap")
        return BestBound(0.0, True)
    k = total / omega
    if k > nvals * (1.0 + 1e-12):
        raise ValueError(f"budget {total} infeasible for {nvals} weights capped at {omega}")
    k = min(k, float(nvals))
    if k == nvals:
        value = omega * float(vals.sum())
    else:
        top = min(int(math.floor(k)), nvals - 1)
        value = max(lower_bound(vals, spec, m) for m in range(1, top + 1))
    certified, _ = k_nonnegative(vals, k)
    return BestBound(value, certified)


def combine(a: WeightedSumSpec, b: WeightedSumSpec | None = None, op: str = "add",
            c=None) -> WeightedSumSpec:
    """Combination rules for weight specs.

    ``scale``: multiply both cap and budget by c > 0.  ``weaken``: replace the
    cap by the larger cap of ``b`` (requires a.omega <= b.omega), keeping the
    budget.  ``add``: add caps and budgets.  Fraction-valued specs stay exact.
    """
    if op == "scale":
        if c is None or c <= 0:
            raise ValueError("scale requires c > 0")
        return WeightedSumSpec(c * a.omega, c * a.total)
    if op == "weaken":
        if b is None:
            raise ValueError("weaken requires a second spec")
        if a.omega > b.omega:
            raise ValueError("weaken requires a.omega <= b.omega")
        return WeightedSumSpec(b.omega, a.total)
    if op == "add":
        if b is None:
            raise ValueError("add requires a second spec")
        return WeightedSumSpec(a.omega + b.omega, a.total + b.total)
    raise ValueError(f"unknown op {op!r}")


def _scaled(spec: WeightedSumSpec, c) -> WeightedSumSpec:
    if c == 0:
        return WeightedSumSpec(Fraction(0), Fraction(0))
    return combine(spec, op="scale", c=c)


def scalar_weight_spec(n: int) -> WeightedSumSpec:
    """Spec bounding the scalar curvature: cap 1, budget (n-1)(n+2)/2."""
    return WeightedSumSpec(Fraction(1), Fraction((n - 1) * (n + 2), 2))


def ricci_weight_spec(n: int) -> WeightedSumSpec:
    """Spec bounding the smallest Ricci eigenvalue: cap n/(n+2), budget n-1.

    Assembled from the direct Ricci spec (cap 1, budget n) scaled by
    (n-1)/(n+1) plus the scalar spec scaled by 2/((n+1)(n+2)).
    """
    direct = _scaled(WeightedSumSpec(Fraction(1), Fraction(n)), Fraction(n - 1, n + 1))
    via_scalar = _scaled(scalar_weight_spec(n), Fraction(2, (n + 1) * (n + 2)))
    return combine(direct, via_scalar, "add")


def action_norm_spec(n: int) -> WeightedSumSpec:
    """Spec for the eigenbasis action norms on a Weyl tensor, per unit |W|^2:
    cap 8(n-2)/n, budget 2(n^2+n-8)/n."""
    return WeightedSumSpec(Fraction(8 * (n - 2), n), Fraction(2 * (n * n + n - 8), n))


def bochner_weight_spec(n: int) -> WeightedSumSpec:
    """Assembled spec (cap 8(3n-1)/(n+2), budget 6(n-1)) for the curvature
    term of the Bochner-type inequality in dimension n >= 8."""
    if n < 8:
        raise ValueError(f"assembled spec needs n >= 8, got {n}")
    parts = [
        action_norm_spec(n),
        _scaled(ricci_weight_spec(n), Fraction(4 * (n - 8), n)),
        WeightedSumSpec(Fraction(12), Fraction(12)),
        _scaled(scalar_weight_spec(n), Fraction(32, n * (n + 2))),
    ]
    out = parts[0]
    for p in parts[1:]:
        out = combine(out, p, "add")
    return out


def threshold(n: int, theorem: str) -> Fraction:
    """Exact k-nonnegativity threshold for the named rigidity statement.

    ``A``: 3(n-1)(n+2)/(4(3n-1)) for n >= 8; ``B5``: 252/169 (n = 5);
    ``B7``: 54/35 (n = 7).
    """
    if theorem == "A":
        if n < 8:
            raise ValueError(f"threshold A needs n >= 8, got {n}")
        return Fraction(3 * (n - 1) * (n + 2), 4 * (3 * n - 1))
    if theorem == "B5":
        if n != 5:
            raise ValueError(f"threshold B5 needs n = 5, got {n}")
        return Fraction(252, 169)
    if theorem == "B7":
        if n != 7:
            raise ValueError(f"threshold B7 needs n = 7, got {n}")
        return Fraction(54, 35)
    raise ValueError(f"unknown theorem {theorem!r}")
