"""Four-dimensional spectral calculus: Hodge splitting, the diagonal value
grid, the cone condition and the constrained cubic.

All of this is pointwise linear algebra on a single curvature tensor; the
self-dual and anti-self-dual blocks are 3 x 3 symmetric matrices obtained by
conjugating the 2-form operator into the split basis of Lambda^2.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .operators import SecondKindMatrix, Spectrum, first_kind, k_nonnegative, second_kind, spectrum
from .tensors import (
    DEFAULT_TOL,
    AlgebraicCurvatureTensor,
    InvalidTensorError,
    decompose,
    ricci,
    tensor_norm,
)

__all__ = [
    "DualWeylSpectrum",
    "ConeCheckResult",
    "ConeBoundsReport",
    "dual_basis",
    "hodge_split",
    "dual_weyl_spectrum",
    "lambda_matrix",
    "cone_condition",
    "implies_cone",
    "f_value",
    "f_minimize",
    "cone_implies_bounds",
    "weitzenbock_algebraic",
    "classify4d",
]


@dataclass(frozen=True)
class DualWeylSpectrum:
    """Sorted eigenvalue triples of the two half-Weyl blocks, plus the scalar
    curvature of the source tensor.  Each triple sums to zero."""

    a: np.ndarray
    b: np.ndarray
    s: float

    def __post_init__(self):
        a = np.sort(np.asarray(self.a, float))
        b = np.sort(np.asarray(self.b, float))
        if a.shape != (3,) or b.shape != (3,):
            raise ValueError("expected eigenvalue triples")
        scale = max(1.0, float(np.abs(a).max()), float(np.abs(b).max()))
        if abs(a.sum()) > 1e-8 * scale or abs(b.sum()) > 1e-8 * scale:
            raise ValueError("half-Weyl eigenvalues must sum to zero")
        a.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)


@dataclass(frozen=True)
class ConeCheckResult:
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class ConeBoundsReport:
    cone_holds: bool
    a3: float
    b3: float
    s: float
    weyl_norm: float
    violations: tuple[str, ...]


def dual_basis() -> np.ndarray:
    """Orthogonal 6 x 6 change of basis on Lambda^2, pair basis to split basis.

    Columns 0..2 span the self-dual part, columns 3..5 the anti-self-dual
    part, in the pair ordering (12, 13, 14, 23, 24, 34):
    (e1^e2 +- e3^e4, e1^e3 -+ e2^e4, e1^e4 +- e2^e3), each over sqrt(2).
    """
    r = 1.0 / np.sqrt(2.0)
    p = np.zeros((6, 6))
    p[:, 0] = [r, 0, 0, 0, 0, r]
    p[:, 1] = [0, r, 0, 0, -r, 0]
    p[:, 2] = [0, 0, r, r, 0, 0]
    p[:, 3] = [r, 0, 0, 0, 0, -r]
    p[:, 4] = [0, r, 0, 0, r, 0]
    p[:, 5] = [0, 0, r, -r, 0, 0]
    return p


def hodge_split(W: AlgebraicCurvatureTensor, tol: float = 1e-8):
    """Self-dual and anti-self-dual 3 x 3 blocks of a trace-free 4D tensor.

    The 2-form operator of a totally trace-free tensor is block diagonal in
    the split basis; both blocks are symmetric and trace-free.
    """
    if W.n != 4:
        raise ValueError(f"Hodge splitting needs n = 4, got n = {W.n}")
    nrm = tensor_norm(W)
    if float(np.linalg.norm(ricci(W).matrix)) > tol * max(nrm, 1.0):
        raise InvalidTensorError("Hodge splitting needs a totally trace-free tensor")
    p = dual_basis()
    conj = p.T @ first_kind(W) @ p
    w_plus = 0.5 * (conj[:3, :3] + conj[:3, :3].T)
    w_minus = 0.5 * (conj[3:, 3:] + conj[3:, 3:].T)
    return w_plus, w_minus


def dual_weyl_spectrum(T: AlgebraicCurvatureTensor) -> DualWeylSpectrum:
    """Decompose ``T`` and return the sorted spectra of both half-Weyl blocks."""
    dec = decompose(T)
    w_plus, w_minus = hodge_split(dec.weyl)
    return DualWeylSpectrum(
        np.linalg.eigvalsh(w_plus), np.linalg.eigvalsh(w_minus), dec.scalar
    )


def lambda_matrix(ds: DualWeylSpectrum) -> np.ndarray:
    """Grid of diagonal operator values ``s/12 - a_i - b_j``, shape (3, 3)."""
    return ds.s / 12.0 - ds.a[:, None] - ds.b[None, :]


def cone_condition(sp: Spectrum, tol: float = DEFAULT_TOL) -> ConeCheckResult:
    """Check ``l1 + l2 + l3 >= -3 lbar`` on a 9-value spectrum."""
    vals = sp.values
    if len(vals) != 9:
        raise ValueError(f"cone condition needs a 9-value spectrum, got {len(vals)}")
    lhs = float(vals[:3].sum())
    rhs = -3.0 * sp.mean
    scale = max(1.0, float(np.abs(vals).max()))
    return ConeCheckResult(lhs, rhs, lhs >= rhs - tol * scale)


def implies_cone(sp: Spectrum, tol: float = DEFAULT_TOL) -> bool:
    """Whether the spectrum is 4.5-nonnegative; when it is, the cone condition
    is verified to follow (a failure would indicate a broken eigenvalue chain
    and raises)."""
    vals = sp.values
    if len(vals) != 9:
        raise ValueError(f"needs a 9-value spectrum, got {len(vals)}")
    holds, _ = k_nonnegative(sp, 4.5)
    if holds and not cone_condition(sp, tol).holds:
        raise RuntimeError("4.5-nonnegative spectrum violating the cone condition")
    return holds


def f_value(a, s: float, tol: float = DEFAULT_TOL) -> float:
    """Constrained cubic ``2 [s sum a_i^2 - 12 sum a_i^3]`` on zero-sum triples.

    Under the zero-sum constraint this equals the cross form
    ``(s/2) |W+|^2 - 72 det W+`` with ``|W+|^2 = 4 sum a_i^2`` and
    ``det W+ = a1 a2 a3``; both are evaluated and must agree.
    """
    arr = np.asarray(a, float)
    if arr.shape != (3,):
        raise ValueError("expected a triple")
    scale = max(1.0, float(np.abs(arr).max()), abs(s))
    if abs(float(arr.sum())) > tol * scale:
        raise ValueError("triple must sum to zero")
    primary = 2.0 * (s * float(np.sum(arr**2)) - 12.0 * float(np.sum(arr**3)))
    cross = 0.5 * s * 4.0 * float(np.sum(arr**2)) - 72.0 * float(np.prod(arr))
    if abs(primary - cross) > 1e-6 * max(1.0, scale**3):
        raise ArithmeticError("cubic forms disagree beyond roundoff")
    return primary


def _f_grid(a1, a2, s):
    a3 = -a1 - a2
    sq = a1 * a1 + a2 * a2 + a3 * a3
    cu = a1**3 + a2**3 + a3**3
    return 2.0 * (s * sq - 12.0 * cu)


def _refine(p, s, radius, rounds=12, pts=21):
    hi = s / 6.0
    best = np.array(p, float)
    for _ in range(rounds):
        x = np.linspace(best[0] - radius, best[0] + radius, pts)
        y = np.linspace(best[1] - radius, best[1] + radius, pts)
        gx, gy = np.meshgrid(x, y, indexing="ij")
        feas = (gx <= hi) & (gy <= hi) & (gx + gy >= -hi - 1e-12 * s)
        vals = np.where(feas, _f_grid(gx, gy, s), np.inf)
        i, j = np.unravel_index(np.argmin(vals), vals.shape)
        best = np.array([gx[i, j], gy[i, j]])
        radius *= 0.35
    return best, _f_grid(best[0], best[1], s)


def f_minimize(s: float, grid: int):
    """Brute-force minimization of the cubic over zero-sum triples with each
    entry at most s/6.

    Scans a grid in the first two coordinates, refines every grid-local
    minimum, and returns the minimum value together with the deduplicated
    argmin set as lexicographically sorted ascending triples.
    """
    if s <= 0:
        raise ValueError(f"needs s > 0, got {s}")
    if grid < 100:
        raise ValueError(f"needs grid >= 100, got {grid}")
    hi = s / 6.0
    lo = -s / 3.0
    axis = np.linspace(lo, hi, grid)
    spacing = axis[1] - axis[0]
    gx, gy = np.meshgrid(axis, axis, indexing="ij")
    feas = gx + gy >= -hi - 1e-12 * s
    vals = np.where(feas, _f_grid(gx, gy, s), np.inf)

    padded = np.full((grid + 2, grid + 2), np.inf)
    padded[1:-1, 1:-1] = vals
    local = np.isfinite(vals)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di == 0 and dj == 0:
                continue
            local &= vals <= padded[1 + di : grid + 1 + di, 1 + dj : grid + 1 + dj]
    seeds = list(zip(gx[local], gy[local]))
    imin = np.unravel_index(np.argmin(vals), vals.shape)
    seeds.append((gx[imin], gy[imin]))

    refined = [_refine(p, s, 2.0 * spacing) for p in seeds]
    fmin = min(v for _, v in refined)
    window = max(1e-12 * abs(s) ** 3, 1e-12)
    argmins: list[tuple[float, float, float]] = []
    for (x, y), v in refined:
        if v > fmin + window:
            continue
        triple = tuple(sorted((float(x), float(y), float(-x - y))))
        if all(
            max(abs(triple[i] - kept[i]) for i in range(3)) > 0.02 * s
            for kept in argmins
        ):
            argmins.append(triple)
    return float(fmin), sorted(argmins)


def cone_implies_bounds(T: AlgebraicCurvatureTensor, tol: float = DEFAULT_TOL) -> ConeBoundsReport:
    """When the cone condition holds, check the half-Weyl top eigenvalue bounds
    ``a3 <= s/6`` and ``b3 <= s/6``, the sign of the scalar curvature, and the
    vanishing of the Weyl part in the scalar-flat case."""
    if T.n != 4:
        raise ValueError(f"needs n = 4, got n = {T.n}")
    cc = cone_condition(spectrum(second_kind(T)), tol)
    ds = dual_weyl_spectrum(T)
    a3 = float(ds.a[2])
    b3 = float(ds.b[2])
    weyl_norm = float(np.sqrt(4.0 * (np.sum(ds.a**2) + np.sum(ds.b**2))))
    violations: list[str] = []
    if cc.holds:
        scale = max(1.0, abs(ds.s), abs(a3), abs(b3))
        if a3 > ds.s / 6.0 + tol * scale:
            violations.append("a3_bound")
        if b3 > ds.s / 6.0 + tol * scale:
            violations.append("b3_bound")
        if ds.s < -tol * scale:
            violations.append("scalar_sign")
        if abs(ds.s) <= tol * scale and weyl_norm > 100.0 * tol * scale:
            violations.append("weyl_vanishing")
    return ConeBoundsReport(cc.holds, a3, b3, ds.s, weyl_norm, tuple(violations))


def weitzenbock_algebraic(T: AlgebraicCurvatureTensor) -> float:
    """Algebraic Weitzenboeck quantity ``(s/2) |W+|^2 - 72 det W+`` with the
    tensor norm ``|W+|^2 = 4 tr((W+)^2)`` of the self-dual block."""
    if T.n != 4:
        raise ValueError(f"needs n = 4, got n = {T.n}")
    dec = decompose(T)
    w_plus, _ = hodge_split(dec.weyl)
    return float(
        2.0 * dec.scalar * np.sum(w_plus * w_plus) - 72.0 * np.linalg.det(w_plus)
    )


def classify4d(T: AlgebraicCurvatureTensor, hint_tol: float = 1e-6) -> dict:
    """Pointwise spectral report with a pattern-matching branch hint.

    The hint compares both half-Weyl spectra against the flat triple and the
    (-s/12, -s/12, s/6) product pattern; it is a heuristic label, not a
    classification proof.
    """
    ds = dual_weyl_spectrum(T)
    cc = cone_condition(spectrum(second_kind(T)))
    scale = max(1.0, abs(ds.s), float(np.abs(ds.a).max()), float(np.abs(ds.b).max()))
    pattern = np.array([-ds.s / 12.0, -ds.s / 12.0, ds.s / 6.0])

    def near(x, y):
        return bool(np.abs(np.asarray(x) - y).max() <= hint_tol * scale)

    flat_a, flat_b = near(ds.a, 0.0), near(ds.b, 0.0)
    pat_a, pat_b = near(ds.a, pattern), near(ds.b, pattern)
    if flat_a and flat_b:
        hint = "conformally_flat"
    elif (pat_a and flat_b) or (flat_a and pat_b):
        hint = "cp2_like"
    elif pat_a and pat_b:
        hint = "product_like"
    else:
        hint = "none"
    return {
        "a": [float(v) for v in ds.a],
        "b": [float(v) for v in ds.b],
        "s": float(ds.s),
        "cone_holds": cc.holds,
        "branch_hint": hint,
    }
