"""curvop: numerical laboratory for algebraic curvature tensors.

Materializes the curvature operator of the second kind, the weighted
eigenvalue calculus, the contraction identities and spectral inequalities
behind curvature rigidity statements, and the four-dimensional half-Weyl
spectral calculus, all at desk scale with property-based verification.
"""

from .fourdim import (
    ConeCheckResult,
    DualWeylSpectrum,
    classify4d,
    cone_condition,
    cone_implies_bounds,
    dual_weyl_spectrum,
    f_minimize,
    f_value,
    hodge_split,
    implies_cone,
    lambda_matrix,
    weitzenbock_algebraic,
)
from .identities import (
    IdentityReport,
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
    run_suite,
)
from .models import ModelSpec, build, verify_model_claims
from .operators import (
    SecondKindMatrix,
    Spectrum,
    TraceFreeSymBasis,
    alpha_beta,
    build_basis,
    first_kind,
    k_nonnegative,
    quadratic_form,
    second_kind,
    sij_family,
    spectrum,
)
from .tensors import (
    AlgebraicCurvatureTensor,
    CurvatureDecomposition,
    SymTwoTensor,
    constant_curvature,
    decompose,
    kulkarni_nomizu,
    random_curvature,
    reassemble,
    ricci,
    scalar,
    validate,
)
from .weighted import (
    WeightedSumSpec,
    best_lower_bound,
    combine,
    lower_bound,
    threshold,
)

__version__ = "0.1.0"
