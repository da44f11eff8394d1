"""Curvature operators of the first and second kind, spectra and contractions.

The operator of the second kind is the restriction of the induced action on
symmetric 2-tensors to the trace-free subspace S2_0(V), represented as an
N x N symmetric matrix with N = n(n+1)/2 - 1 in an explicit orthonormal
basis.  The inner product on S2(V) is ``<A, B> = tr(A^T B)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .tensors import (
    DEFAULT_TOL,
    AlgebraicCurvatureTensor,
    ShapeError,
    SymTwoTensor,
    ricci,
    tensor_norm,
)

__all__ = [
    "basis_size",
    "TraceFreeSymBasis",
    "SecondKindMatrix",
    "Spectrum",
    "SijFamily",
    "KnnResult",
    "build_basis",
    "second_kind",
    "first_kind",
    "spectrum",
    "k_nonnegative",
    "alpha_beta",
    "sij_family",
    "quadratic_form",
    "s_action",
    "s_action_stack",
    "action_norms",
    "action_quadratic",
]


def basis_size(n: int) -> int:
    """Dimension of S2_0(V): n(n+1)/2 - 1."""
    return n * (n + 1) // 2 - 1


@dataclass(frozen=True)
class TraceFreeSymBasis:
    """Orthonormal basis of trace-free symmetric matrices, stacked (N, n, n).

    Ordering: normalized off-diagonal pair elements for i < j in lexicographic
    order, then the n-1 diagonal ladder elements diag(1,..,1,-m,0,..,0)
    normalized by sqrt(m(m+1)).
    """

    n: int
    elements: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.elements, float)
        arr.setflags(write=False)
        object.__setattr__(self, "elements", arr)


@dataclass(frozen=True)
class SecondKindMatrix:
    """Matrix of the second-kind operator, with its basis and source tensor."""

    n: int
    matrix: np.ndarray
    basis: TraceFreeSymBasis
    tensor: AlgebraicCurvatureTensor

    def eigensystem(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigenvalues (ascending) and eigenvectors as stacked matrices (N, n, n)."""
        vals, vecs = np.linalg.eigh(self.matrix)
        mats = np.einsum("ba,bij->aij", vecs, self.basis.elements)
        return vals, mats


@dataclass(frozen=True)
class Spectrum:
    """Nondecreasing eigenvalue list with its mean."""

    values: np.ndarray
    mean: float

    def __post_init__(self):
        v = np.asarray(self.values, float)
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return len(self.values)


@dataclass(frozen=True)
class SijFamily:
    """The n^2 trace-free symmetric matrices built from a Weyl-type tensor.

    ``matrices[i, j]`` is the n x n symmetric matrix with entries
    ``W_iabj + W_ibaj``.
    """

    n: int
    matrices: np.ndarray


class KnnResult(NamedTuple):
    holds: bool
    weighted_sum: float


def build_basis(n: int) -> TraceFreeSymBasis:
    """Orthonormal basis of S2_0(V); Gram matrix is the identity."""
    if n < 2:
        raise ValueError(f"need n >= 2, got {n}")
    mats = []
    for i in range(n):
        for j in range(i + 1, n):
            m = np.zeros((n, n))
            m[i, j] = m[j, i] = 1.0 / math.sqrt(2.0)
            mats.append(m)
    for m_ in range(1, n):
        d = np.zeros(n)
        d[:m_] = 1.0
        d[m_] = -float(m_)
        mats.append(np.diag(d / math.sqrt(m_ * (m_ + 1.0))))
    return TraceFreeSymBasis(n, np.array(mats))


def second_kind(T: AlgebraicCurvatureTensor) -> SecondKindMatrix:
    """Second-kind operator matrix, entries ``sum R_kijl B^a_ij B^b_kl``."""
    basis = build_basis(T.n)
    m = np.einsum(
        "kijl,aij,bkl->ab", T.components, basis.elements, basis.elements, optimize=True
    )
    return SecondKindMatrix(T.n, 0.5 * (m + m.T), basis, T)


def first_kind(T: AlgebraicCurvatureTensor) -> np.ndarray:
    """Matrix of the operator on 2-forms in the orthonormal basis e_i ^ e_j, i < j."""
    n = T.n
    pairs = np.array([(i, j) for i in range(n) for j in range(i + 1, n)])
    m = T.components[
        pairs[:, 0][:, None], pairs[:, 1][:, None], pairs[:, 0][None, :], pairs[:, 1][None, :]
    ]
    return 0.5 * (m + m.T)


def spectrum(m) -> Spectrum:
    """Sorted eigenvalues of a symmetric matrix (or :class:`SecondKindMatrix`)."""
    if isinstance(m, SecondKindMatrix):
        m = m.matrix
    vals = np.linalg.eigvalsh(np.asarray(m, float))
    return Spectrum(vals, float(vals.mean()))


def _values(sp) -> np.ndarray:
    if isinstance(sp, Spectrum):
        return sp.values
    return np.sort(np.asarray(sp, float))


def k_nonnegative(sp, k) -> KnnResult:
    """Test fractional k-nonnegativity of a sorted spectrum.

    Returns whether ``l_1 + ... + l_[k] + (k - [k]) l_[k]+1 >= 0`` together
    with the attained sum.  ``k`` may be fractional; requires 1 <= k <= N.
    """
    vals = _values(sp)
    nvals = len(vals)
    if not (1 <= k <= nvals):
        raise ValueError(f"k={k} out of range [1, {nvals}]")
    m = int(math.floor(k))
    frac = float(k) - m
    total = float(vals[:m].sum())
    if frac > 0.0:
        total += frac * float(vals[m])
    return KnnResult(total >= 0.0, total)


def alpha_beta(T: AlgebraicCurvatureTensor, W) -> tuple[float, float]:
    """The two 6-index curvature-Weyl contraction scalars.

    ``alpha = R_sjti W_sjkl W_tikl`` and ``beta = R_sikt W_sjkl W_ijtl``,
    with the curvature factor taken from ``T`` and the quadratic factor from
    ``W`` (normally the Weyl part of ``T``, but any curvature-symmetric
    tensor is accepted).
    """
    wa = np.asarray(W, float)
    if wa.shape != T.components.shape:
        raise ShapeError(f"dimension mismatch: {wa.shape} vs {T.components.shape}")
    a = float(np.einsum("sjti,sjkl,tikl->", T.components, wa, wa, optimize=True))
    b = float(np.einsum("sikt,sjkl,ijtl->", T.components, wa, wa, optimize=True))
    return a, b


def sij_family(W: AlgebraicCurvatureTensor, tol: float = 1e-8) -> SijFamily:
    """Matrices ``S^ij_ab = W_iabj + W_ibaj`` of a totally trace-free tensor.

    Each member is symmetric and trace-free; raises if ``W`` has a Ricci
    trace above ``tol`` relative to its norm.
    """
    nrm = tensor_norm(W)
    ric_norm = float(np.linalg.norm(ricci(W).matrix))
    if ric_norm > tol * max(nrm, 1.0):
        raise ValueError("input tensor is not totally trace-free")
    a = W.components.transpose(0, 2, 3, 1)
    return SijFamily(W.n, a + a.transpose(0, 1, 3, 2))


def quadratic_form(M: SecondKindMatrix, h, tol: float = 1e-8) -> float:
    """Quadratic form ``<Rbar(h), h>`` of a trace-free symmetric tensor.

    Evaluated by direct contraction against the source tensor of ``M``,
    independently of the matrix assembly or any eigendecomposition.
    """
    hm = np.asarray(h, float)
    if isinstance(h, SymTwoTensor):
        hm = h.matrix
    scale = max(float(np.linalg.norm(hm)), 1.0)
    if abs(float(np.trace(hm))) > tol * scale:
        raise ValueError("h must be trace-free")
    return float(np.einsum("aijb,ij,ab->", M.tensor.components, hm, hm, optimize=True))


def s_action(S, T) -> np.ndarray:
    """Derivation action of a symmetric matrix on a rank-4 tensor.

    ``(S T)_ijkl = S_im T_mjkl + S_jm T_imkl + S_km T_ijml + S_lm T_ijkm``.
    """
    s = np.asarray(S, float)
    t = np.asarray(T, float)
    return (
        np.einsum("im,mjkl->ijkl", s, t)
        + np.einsum("jm,imkl->ijkl", s, t)
        + np.einsum("km,ijml->ijkl", s, t)
        + np.einsum("lm,ijkm->ijkl", s, t)
    )


def s_action_stack(mats, T) -> np.ndarray:
    """Vectorized :func:`s_action` for a stack of matrices, output (K, n, n, n, n)."""
    b = np.asarray(mats, float)
    t = np.asarray(T, float)
    return (
        np.einsum("aim,mjkl->aijkl", b, t, optimize=True)
        + np.einsum("ajm,imkl->aijkl", b, t, optimize=True)
        + np.einsum("akm,ijml->aijkl", b, t, optimize=True)
        + np.einsum("alm,ijkm->aijkl", b, t, optimize=True)
    )


def action_norms(M: SecondKindMatrix, U) -> tuple[np.ndarray, np.ndarray]:
    """Eigenvalues of ``M`` and the squared action norms ``|S^a U|^2`` of its
    eigenvectors, aligned index by index."""
    vals, mats = M.eigensystem()
    acted = s_action_stack(mats, U)
    norms = np.einsum("aijkl,aijkl->a", acted, acted, optimize=True)
    return vals, norms


def action_quadratic(M: SecondKindMatrix, U) -> float:
    """``sum_a lambda_a |S^a U|^2`` over the eigenbasis of ``M``."""
    vals, norms = action_norms(M, U)
    return float(np.dot(vals, norms))
