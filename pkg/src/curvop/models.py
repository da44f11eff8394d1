"""Explicit curvature tensors of the reference geometries.

Each model exists purely as an algebraic curvature tensor at a point; there
are no metrics or geodesics here.  The complex projective plane is built from
the standard block complex structure with holomorphic sectional curvature c,
products are block tensors with zero mixed components.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fourdim import cone_condition, dual_weyl_spectrum
from .operators import k_nonnegative, second_kind, spectrum
from .tensors import AlgebraicCurvatureTensor, constant_curvature

__all__ = [
    "MODEL_NAMES",
    "ModelSpec",
    "ClaimResult",
    "build",
    "suite_models",
    "verify_model_claims",
]

MODEL_NAMES = ("sphere", "flat", "hyperbolic", "product_spheres", "s1_x_s3", "cp2")


@dataclass(frozen=True)
class ModelSpec:
    """Named model geometry with its curvature scale parameters."""

    name: str
    n: int = 4
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in MODEL_NAMES:
            raise ValueError(f"unknown model {self.name!r}")
        p = dict(self.params)
        if self.name == "sphere":
            if p.setdefault("c", 1.0) <= 0:
                raise ValueError("sphere needs c > 0")
        elif self.name == "hyperbolic":
            if p.setdefault("c", -1.0) >= 0:
                raise ValueError("hyperbolic space needs c < 0")
        elif self.name == "flat":
            pass
        elif self.name == "product_spheres":
            if self.n != 4:
                raise ValueError("product of surfaces needs n = 4")
            p.setdefault("k1", 1.0)
            p.setdefault("k2", 1.0)
        elif self.name == "s1_x_s3":
            if self.n != 4:
                raise ValueError("s1_x_s3 needs n = 4")
            if p.setdefault("k", 1.0) <= 0:
                raise ValueError("s1_x_s3 needs k > 0")
        elif self.name == "cp2":
            if self.n != 4:
                raise ValueError("cp2 needs n = 4")
            if p.setdefault("c", 1.0) <= 0:
                raise ValueError("cp2 needs c > 0")
        object.__setattr__(self, "params", p)


def _complex_structure() -> np.ndarray:
    j = np.zeros((4, 4))
    j[0, 1], j[1, 0] = 1.0, -1.0
    j[2, 3], j[3, 2] = 1.0, -1.0
    return j


def _cp2(c: float) -> AlgebraicCurvatureTensor:
    eye = np.eye(4)
    jm = _complex_structure()
    comp = (c / 4.0) * (
        np.einsum("ik,jl->ijkl", eye, eye)
        - np.einsum("il,jk->ijkl", eye, eye)
        + np.einsum("ik,jl->ijkl", jm, jm)
        - np.einsum("il,jk->ijkl", jm, jm)
        + 2.0 * np.einsum("ij,kl->ijkl", jm, jm)
    )
    return AlgebraicCurvatureTensor(4, comp)


def _block_product(dims: tuple[int, ...], curvatures: tuple[float, ...]) -> AlgebraicCurvatureTensor:
    n = sum(dims)
    comp = np.zeros((n,) * 4)
    start = 0
    for d, k in zip(dims, curvatures):
        idx = np.arange(start, start + d)
        if d >= 2 and k != 0.0:
            eye = np.eye(d)
            comp[np.ix_(idx, idx, idx, idx)] = k * (
                np.einsum("ik,jl->ijkl", eye, eye) - np.einsum("il,jk->ijkl", eye, eye)
            )
        start += d
    return AlgebraicCurvatureTensor(n, comp)


def build(spec: ModelSpec) -> AlgebraicCurvatureTensor:
    """Materialize the curvature tensor of a model geometry."""
    p = spec.params
    if spec.name == "sphere":
        return constant_curvature(spec.n, p["c"])
    if spec.name == "hyperbolic":
        return constant_curvature(spec.n, p["c"])
    if spec.name == "flat":
        return AlgebraicCurvatureTensor(spec.n, np.zeros((spec.n,) * 4))
    if spec.name == "product_spheres":
        return _block_product((2, 2), (p["k1"], p["k2"]))
    if spec.name == "s1_x_s3":
        return _block_product((1, 3), (0.0, p["k"]))
    if spec.name == "cp2":
        return _cp2(p["c"])
    raise ValueError(f"unknown model {spec.name!r}")


def suite_models(n: int) -> list[AlgebraicCurvatureTensor]:
    """Model tensors exercised alongside random trials in dimension n."""
    out = [
        build(ModelSpec("sphere", n, {"c": 1.0})),
        build(ModelSpec("flat", n)),
        build(ModelSpec("hyperbolic", n, {"c": -1.0})),
    ]
    if n == 4:
        out += [
            build(ModelSpec("product_spheres", 4, {"k1": 1.0, "k2": 1.0})),
            build(ModelSpec("s1_x_s3", 4, {"k": 1.0})),
            build(ModelSpec("cp2", 4, {"c": 1.0})),
        ]
    return out


@dataclass(frozen=True)
class ClaimResult:
    name: str
    passed: bool
    details: dict


def verify_model_claims(tol: float = 1e-9) -> list[ClaimResult]:
    """Check the named spectral facts about the model geometries.

    A failing claim carries the offending spectrum in its details.
    """
    out = []

    s2xs2 = build(ModelSpec("product_spheres", 4, {"k1": 1.0, "k2": 1.0}))
    sp = spectrum(second_kind(s2xs2))
    holds, total = k_nonnegative(sp, 4.5)
    scale = max(1.0, float(np.abs(sp.values).max()))
    out.append(
        ClaimResult(
            "s2xs2_strictly_45_negative",
            (not holds) and total < -1e-6 * scale,
            {"weighted_sum": total, "spectrum": sp.values.tolist()},
        )
    )

    cp2 = build(ModelSpec("cp2", 4, {"c": 1.0}))
    cc = cone_condition(spectrum(second_kind(cp2)), tol)
    out.append(
        ClaimResult(
            "cp2_cone_condition",
            cc.holds,
            {"lhs": cc.lhs, "rhs": cc.rhs,
             "spectrum": spectrum(second_kind(cp2)).values.tolist()},
        )
    )

    sphere = build(ModelSpec("sphere", 4, {"c": 1.0}))
    sphere_sp = spectrum(second_kind(sphere))
    out.append(
        ClaimResult(
            "sphere_positive_definite",
            float(sphere_sp.values.min()) > 1e-12,
            {"spectrum": sphere_sp.values.tolist()},
        )
    )

    flat = build(ModelSpec("flat", 4))
    flat_sp = spectrum(second_kind(flat))
    out.append(
        ClaimResult(
            "flat_zero_spectrum",
            float(np.abs(flat_sp.values).max()) <= 1e-12,
            {"spectrum": flat_sp.values.tolist()},
        )
    )

    for k1, k2 in ((1.0, 1.0), (2.0, 0.5)):
        prod = build(ModelSpec("product_spheres", 4, {"k1": k1, "k2": k2}))
        ds = dual_weyl_spectrum(prod)
        pattern = np.array([-ds.s / 12.0, -ds.s / 12.0, ds.s / 6.0])
        err = max(
            float(np.abs(ds.a - pattern).max()), float(np.abs(ds.b - pattern).max())
        )
        out.append(
            ClaimResult(
                f"product_dual_pattern_k1_{k1}_k2_{k2}",
                err <= tol * max(1.0, abs(ds.s)),
                {"a": ds.a.tolist(), "b": ds.b.tolist(), "s": ds.s, "error": err},
            )
        )

    return out
