"""Per-identity verification routines and the aggregated suite."""

import numpy as np
import pytest

from curvop.identities import (
    CheckContext,
    bochner_scalar,
    check_bochner_identity,
    check_bochner_inequality,
    check_jack_parker,
    check_laplacian_contraction,
    check_n5_reductions,
    check_operator_quadratic,
    check_ric_upper,
    check_scalar_ricci_bounds,
    check_sij_form,
    report_to_dict,
    run_suite,
    sphere_perturbation,
    suite_check_names,
)
from curvop.operators import alpha_beta, k_nonnegative, second_kind, spectrum
from curvop.tensors import (
    AlgebraicCurvatureTensor,
    constant_curvature,
    decompose,
    random_curvature,
    random_rotation,
    ricci,
    rotate,
    scalar,
    tensor_norm,
)

FLAT4 = AlgebraicCurvatureTensor(4, np.zeros((4,) * 4))


def test_laplacian_contraction_trivial_and_random():
    assert check_laplacian_contraction(FLAT4).passed
    assert check_laplacian_contraction(constant_curvature(5, 2.0)).passed
    rep = check_laplacian_contraction(random_curvature(6, 1))
    assert rep.passed and rep.max_relative_residual <= 1e-9


def test_bochner_scalar_zero_for_space_forms():
    assert bochner_scalar(constant_curvature(4, 1.0)) == pytest.approx(0.0, abs=1e-12)


def test_sij_form_cases():
    assert check_sij_form(FLAT4).passed
    weyl_only = random_curvature(4, 5, mode="weyl_only")
    assert check_sij_form(weyl_only).passed
    assert check_sij_form(random_curvature(5, 6)).passed


def test_operator_quadratic_variants():
    assert check_operator_quadratic(FLAT4).passed
    assert check_operator_quadratic(random_curvature(5, 2)).passed
    T = random_curvature(7, 3)
    U = random_curvature(7, 4, mode="weyl_only").components
    rep = check_operator_quadratic(T, U)
    assert rep.passed and rep.max_relative_residual <= 1e-9


def test_bochner_identity_dimensions():
    for n, seed in ((4, 1), (8, 2)):
        rep = check_bochner_identity(random_curvature(n, seed))
        assert rep.passed and rep.max_relative_residual <= 1e-9


@pytest.mark.parametrize("n", [4, 5])
def test_jack_parker_low_dimensions(n):
    for seed in range(5):
        w = random_curvature(n, [seed, n], mode="weyl_only")
        rep = check_jack_parker(w)
        assert rep.name == "jack_parker"
        assert rep.passed and rep.max_relative_residual <= 1e-9


def test_jack_parker_informational_n6():
    residuals = []
    for seed in range(20):
        w = random_curvature(6, [seed], mode="weyl_only")
        rep = check_jack_parker(w)
        assert rep.name == "jack_parker_informational"
        assert rep.passed  # measured, never asserted
        residuals.append(rep.max_relative_residual)
    assert all(np.isfinite(residuals))


def test_jack_parker_rejects_traced_input():
    with pytest.raises(ValueError):
        check_jack_parker(constant_curvature(4, 1.0))


def test_n5_reductions():
    assert check_n5_reductions(constant_curvature(5, 1.0)).passed
    for n in (4, 5):
        rep = check_n5_reductions(random_curvature(n, 7))
        assert rep.passed and rep.max_relative_residual <= 1e-9
    with pytest.raises(ValueError):
        check_n5_reductions(random_curvature(6, 1))


def test_scalar_ricci_bounds():
    assert check_scalar_ricci_bounds(constant_curvature(4, 1.0)).passed
    assert check_scalar_ricci_bounds(FLAT4).passed
    for n in range(4, 11):
        for seed in range(10):
            assert check_scalar_ricci_bounds(random_curvature(n, [seed, n])).passed


def test_bochner_inequality():
    flat8 = AlgebraicCurvatureTensor(8, np.zeros((8,) * 4))
    assert check_bochner_inequality(flat8).passed
    assert check_bochner_inequality(constant_curvature(8, 1.0)).passed
    for n in (8, 9, 10):
        for seed in range(10):
            assert check_bochner_inequality(random_curvature(n, [seed, n])).passed
    with pytest.raises(ValueError):
        check_bochner_inequality(random_curvature(7, 1))


def test_ric_upper_constant_curvature_by_hand():
    # sum of sectional values over 2<=k<l equals 3c; s/2 - Ric_11 = 6c - 3c
    c = 2.0
    T = constant_curvature(4, c)
    lhs = sum(T.components[k, l, k, l] for k in range(1, 4) for l in range(k + 1, 4))
    assert lhs == pytest.approx(3 * c)
    assert scalar(T) / 2 - ricci(T).matrix[0, 0] == pytest.approx(3 * c)
    assert check_ric_upper(T).passed


def test_ric_upper_random_rotations():
    rep = check_ric_upper(random_curvature(5, 13), rotations=10, seed=3)
    assert rep.passed and rep.max_relative_residual <= 1e-9


def test_ric_upper_conditional_by_annealing():
    rng = np.random.default_rng(4)
    for n in (4, 6):
        half = (n - 1) * (n - 2) / 2.0
        T = sphere_perturbation(
            n, rng, lambda c: k_nonnegative(spectrum(second_kind(c)), half).holds
        )
        ric_max = float(np.linalg.eigvalsh(ricci(T).matrix).max())
        assert ric_max <= scalar(T) / 2.0 + 1e-9 * tensor_norm(T)
        assert check_ric_upper(T).passed


def test_homogeneity_of_check_scalars():
    T = random_curvature(5, 21)
    ctx = CheckContext(T)
    for t in (0.5, 2.0):
        scaled = CheckContext(AlgebraicCurvatureTensor(5, t * T.components))
        assert scaled.bochner == pytest.approx(t**3 * ctx.bochner, rel=1e-9)
        a, b = ctx.ab
        sa, sb = scaled.ab
        assert sa == pytest.approx(t**3 * a, rel=1e-9)
        assert sb == pytest.approx(t**3 * b, rel=1e-9)
        assert scaled.weyl_quadratic == pytest.approx(t**3 * ctx.weyl_quadratic, rel=1e-9)
        assert scaled.sij_quadratic == pytest.approx(t**3 * ctx.sij_quadratic, rel=1e-9)
        # residual-based checks stay green under scaling
        assert check_laplacian_contraction(scaled.T).passed
        assert check_bochner_identity(scaled.T).passed


def test_orthogonal_invariance_of_check_scalars():
    rng = np.random.default_rng(9)
    T = random_curvature(5, 22)
    ctx = CheckContext(T)
    rT = rotate(T, random_rotation(5, rng))
    rctx = CheckContext(rT)
    assert rctx.bochner == pytest.approx(ctx.bochner, rel=1e-9)
    assert rctx.w2 == pytest.approx(ctx.w2, rel=1e-9)
    assert rctx.ab[0] == pytest.approx(ctx.ab[0], rel=1e-9)
    assert rctx.ab[1] == pytest.approx(ctx.ab[1], rel=1e-9)
    np.testing.assert_allclose(rctx.spec.values, ctx.spec.values, atol=1e-9)


def test_suite_check_names_dispatch():
    names5 = suite_check_names(5)
    assert "n5_reductions" in names5 and "jack_parker" in names5
    assert "bochner_inequality" not in names5
    names6 = suite_check_names(6)
    assert "jack_parker_informational" in names6 and "n5_reductions" not in names6
    names8 = suite_check_names(8)
    assert "bochner_inequality" in names8
    assert suite_check_names(5, "inequalities") == [
        "scalar_ricci_bounds",
        "ric_upper_conditional",
    ]
    with pytest.raises(ValueError):
        suite_check_names(5, "bogus_check")


def test_run_suite_passes_and_is_deterministic():
    reports = run_suite(5, trials=20, seed=42)
    assert all(r.passed for r in reports)
    again = run_suite(5, trials=20, seed=42)
    assert report_to_dict(5, 42, reports) == report_to_dict(5, 42, again)


def test_run_suite_n6_and_n8_dispatch():
    names6 = {r.name for r in run_suite(6, trials=3, seed=1)}
    assert "jack_parker_informational" in names6
    reports8 = run_suite(8, trials=3, seed=1)
    assert "bochner_inequality" in {r.name for r in reports8}
    assert all(r.passed for r in reports8)


def test_run_suite_rejects_bad_trials():
    with pytest.raises(ValueError):
        run_suite(5, trials=0, seed=1)
