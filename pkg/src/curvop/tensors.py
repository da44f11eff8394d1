"""Dense algebraic curvature tensors on small Euclidean vector spaces.

A curvature tensor is stored as a full numpy array of shape (n, n, n, n)
with component semantics ``R[i, j, k, l] = R_ijkl``.  The sign convention
is fixed so that the unit round sphere is

    R_ijkl = d_ik d_jl - d_il d_jk,

which makes the Ricci contraction ``Ric_jl = sum_i R_ijil`` positive on the
sphere and the induced operator on trace-free symmetric 2-tensors positive
definite.  All operations are pure functions over immutable values.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_TOL = 1e-9

_TINY = 1e-300

__all__ = [
    "DEFAULT_TOL",
    "ShapeError",
    "InvalidTensorError",
    "AlgebraicCurvatureTensor",
    "SymTwoTensor",
    "CurvatureDecomposition",
    "validate",
    "ricci",
    "scalar",
    "decompose",
    "reassemble",
    "random_curvature",
    "kulkarni_nomizu",
    "constant_curvature",
    "project_curvature",
    "tensor_inner",
    "tensor_norm",
    "rotate",
    "random_rotation",
]


class ShapeError(ValueError):
    """Array shape does not match the declared dimension."""


class InvalidTensorError(ValueError):
    """Curvature symmetries violated beyond tolerance."""


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class AlgebraicCurvatureTensor:
    """Rank-4 tensor carrying the pointwise symmetries of a curvature tensor.

    The invariants (antisymmetry in each index pair, pair-exchange symmetry,
    first Bianchi identity) are not enforced at construction; use
    :func:`validate` to test them to tolerance.
    """

    n: int
    components: np.ndarray

    def __post_init__(self):
        if self.n < 3:
            raise ValueError(f"curvature tensors need n >= 3, got n={self.n}")
        arr = np.asarray(self.components, dtype=float)
        if arr.shape != (self.n,) * 4:
            raise ShapeError(f"expected shape {(self.n,) * 4}, got {arr.shape}")
        object.__setattr__(self, "components", _frozen(arr))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.components, dtype=dtype)


@dataclass(frozen=True)
class SymTwoTensor:
    """Symmetric 2-tensor, stored as a dense n x n matrix."""

    n: int
    matrix: np.ndarray

    def __post_init__(self):
        m = np.asarray(self.matrix, dtype=float)
        if m.shape != (self.n, self.n):
            raise ShapeError(f"expected shape {(self.n, self.n)}, got {m.shape}")
        scale = max(float(np.abs(m).max(initial=0.0)), 1.0)
        if float(np.abs(m - m.T).max(initial=0.0)) > 1e-8 * scale:
            raise InvalidTensorError("matrix is not symmetric")
        object.__setattr__(self, "matrix", _frozen(0.5 * (m + m.T)))

    def __array__(self, dtype=None, copy=None):
        return np.asarray(self.matrix, dtype=dtype)

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix))


@dataclass(frozen=True)
class CurvatureDecomposition:
    """Orthogonal decomposition into scalar, traceless-Ricci and Weyl parts."""

    scalar: float
    traceless_ricci: SymTwoTensor
    weyl: AlgebraicCurvatureTensor

    @property
    def n(self) -> int:
        return self.weyl.n


def tensor_inner(a, b) -> float:
    """Frobenius inner product of two rank-4 tensors."""
    return float(np.einsum("ijkl,ijkl->", np.asarray(a, float), np.asarray(b, float)))


def tensor_norm(a) -> float:
    """Frobenius norm of a rank-4 tensor."""
    return float(np.linalg.norm(np.asarray(a, float).ravel()))


def validate(T: AlgebraicCurvatureTensor, tol: float = DEFAULT_TOL) -> list[str]:
    """Return the names of violated symmetry invariants, empty if all hold.

    Residuals are measured relative to the largest component magnitude, so a
    zero tensor passes trivially.  Possible entries, in order:
    ``antisymmetry``, ``pair_symmetry``, ``first_bianchi``.
    """
    R = T.components
    scale = max(float(np.abs(R).max(initial=0.0)), _TINY)
    anti = max(
        float(np.abs(R + R.transpose(1, 0, 2, 3)).max(initial=0.0)),
        float(np.abs(R + R.transpose(0, 1, 3, 2)).max(initial=0.0)),
    )
    pair = float(np.abs(R - R.transpose(2, 3, 0, 1)).max(initial=0.0))
    bianchi = float(
        np.abs(R + R.transpose(0, 2, 3, 1) + R.transpose(0, 3, 1, 2)).max(initial=0.0)
    )
    out = []
    if anti > tol * scale:
        out.append("antisymmetry")
    if pair > tol * scale:
        out.append("pair_symmetry")
    if bianchi > tol * scale:
        out.append("first_bianchi")
    return out


def require_valid(T: AlgebraicCurvatureTensor, tol: float = 1e-8) -> None:
    """Raise :class:`InvalidTensorError` if any symmetry fails at ``tol``."""
    bad = validate(T, tol)
    if bad:
        raise InvalidTensorError(f"curvature symmetries violated: {', '.join(bad)}")


def ricci(T: AlgebraicCurvatureTensor) -> SymTwoTensor:
    """Ricci contraction ``Ric_jl = sum_i R_ijil``."""
    m = np.einsum("ijil->jl", T.components)
    return SymTwoTensor(T.n, 0.5 * (m + m.T))


def scalar(T: AlgebraicCurvatureTensor) -> float:
    """Scalar curvature, the trace of the Ricci contraction."""
    return ricci(T).trace


def kulkarni_nomizu(h, k) -> AlgebraicCurvatureTensor:
    """Kulkarni-Nomizu product of two symmetric 2-tensors.

    ``(h . k)_ijkl = h_ik k_jl + h_jl k_ik - h_il k_jk - h_jk k_il``; the
    result carries all three curvature symmetries.
    """
    hm = np.asarray(h, float)
    km = np.asarray(k, float)
    if hm.shape != km.shape or hm.ndim != 2 or hm.shape[0] != hm.shape[1]:
        raise ShapeError(f"mismatched factors: {hm.shape} vs {km.shape}")
    prod = (
        np.einsum("ik,jl->ijkl", hm, km)
        + np.einsum("jl,ik->ijkl", hm, km)
        - np.einsum("il,jk->ijkl", hm, km)
        - np.einsum("jk,il->ijkl", hm, km)
    )
    return AlgebraicCurvatureTensor(hm.shape[0], prod)


def constant_curvature(n: int, c: float) -> AlgebraicCurvatureTensor:
    """Space form tensor ``R_ijkl = c (d_ik d_jl - d_il d_jk)``."""
    eye = np.eye(n)
    comp = c * (np.einsum("ik,jl->ijkl", eye, eye) - np.einsum("il,jk->ijkl", eye, eye))
    return AlgebraicCurvatureTensor(n, comp)


def decompose(T: AlgebraicCurvatureTensor) -> CurvatureDecomposition:
    """Split into scalar part, traceless Ricci part and Weyl part.

    The Weyl part is totally trace-free and the three parts are pairwise
    orthogonal; :func:`reassemble` reconstructs the input.
    """
    n = T.n
    ric = ricci(T).matrix
    s = float(np.trace(ric))
    g = np.eye(n)
    ric0 = ric - (s / n) * g
    body = (
        kulkarni_nomizu(ric0, g).components / (n - 2)
        + (s / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g).components
    )
    weyl = AlgebraicCurvatureTensor(n, T.components - body)
    return CurvatureDecomposition(s, SymTwoTensor(n, ric0), weyl)


def reassemble(dec: CurvatureDecomposition) -> AlgebraicCurvatureTensor:
    """Rebuild the curvature tensor from its decomposition."""
    n = dec.n
    g = np.eye(n)
    comp = (
        dec.weyl.components
        + kulkarni_nomizu(dec.traceless_ricci.matrix, g).components / (n - 2)
        + (dec.scalar / (2.0 * n * (n - 1))) * kulkarni_nomizu(g, g).components
    )
    return AlgebraicCurvatureTensor(n, comp)


def project_curvature(raw) -> np.ndarray:
    """Orthogonal projection of an arbitrary rank-4 array onto the space of
    algebraic curvature tensors.

    Antisymmetrizes both index pairs, symmetrizes pair exchange, then removes
    the totally antisymmetric (Bianchi-violating) component via the cyclic
    average.  Idempotent.
    """
    a = np.asarray(raw, dtype=float)
    a = 0.25 * (
        a
        - a.transpose(1, 0, 2, 3)
        - a.transpose(0, 1, 3, 2)
        + a.transpose(1, 0, 3, 2)
    )
    a = 0.5 * (a + a.transpose(2, 3, 0, 1))
    cyc = (a + a.transpose(0, 2, 3, 1) + a.transpose(0, 3, 1, 2)) / 3.0
    return a - cyc


def random_curvature(n: int, seed, mode: str = "full") -> AlgebraicCurvatureTensor:
    """Deterministic random curvature tensor.

    Modes: ``full`` projects a standard normal array onto the curvature
    symmetry space; ``weyl_only`` additionally returns only the Weyl part;
    ``einstein`` returns scalar part plus Weyl part (zero traceless Ricci).
    """
    if mode not in ("full", "weyl_only", "einstein"):
        raise ValueError(f"unknown mode {mode!r}")
    rng = np.random.default_rng(seed)
    T = AlgebraicCurvatureTensor(n, project_curvature(rng.standard_normal((n,) * 4)))
    if mode == "full":
        return T
    dec = decompose(T)
    if mode == "weyl_only":
        return dec.weyl
    g = np.eye(n)
    comp = dec.weyl.components + (
        dec.scalar / (2.0 * n * (n - 1))
    ) * kulkarni_nomizu(g, g).components
    return AlgebraicCurvatureTensor(n, comp)


def rotate(T: AlgebraicCurvatureTensor, q: np.ndarray) -> AlgebraicCurvatureTensor:
    """Conjugate by an orthogonal matrix: ``R'_ijkl = q_ia q_jb q_kc q_ld R_abcd``."""
    q = np.asarray(q, float)
    comp = np.einsum("ia,jb,kc,ld,abcd->ijkl", q, q, q, q, T.components, optimize=True)
    return AlgebraicCurvatureTensor(T.n, comp)


def random_rotation(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-ish random rotation from the QR factorization of a normal matrix."""
    q, r = np.linalg.qr(rng.standard_normal((n, n)))
    return q * np.where(np.diag(r) < 0.0, -1.0, 1.0)
