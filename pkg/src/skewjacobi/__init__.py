"""Skew-holomorphic harmonic Maass-Jacobi forms and half-integral weight harmonic Maass forms.

The package stores forms as finite coefficient tables and provides
evaluation, the Weil representation, differential operators checked by
finite differences, and the coefficient-level isomorphism between the
Jacobi side and the plus space.
"""
from .exceptions import (
    NotPrimeIndex,
    PlusSpaceViolation,
    PositiveIndexGammaTerm,
    SupportViolation,
    SymmetryViolation,
)
from .isomorphism import (
    ThetaComponents,
    components_to_scalar,
    components_to_vector,
    conjugate_components,
    full_iso_jacobi_to_plus,
    full_iso_plus_to_jacobi,
    s_factor,
    scalar_to_components,
    theta_decompose,
    theta_reconstruct,
    theta_sum,
    vector_to_components,
)
from .jacobi_skew import (
    JacobiGroupElement,
    SkewJacobiExpansion,
    casimir_termwise,
    eval_skew_jacobi,
    heat_operator_fd,
    heat_termwise,
    jacobi_slash,
    skew_casimir_fd,
    support_classify,
    theta_series_eval,
)
from .metaplectic import (
    S_TILDE,
    T_TILDE,
    Z_TILDE,
    MetaplecticElement,
    VectorValuedExpansion,
    WeilRepContext,
    decompose_sl2_word,
    mp2_compose,
    vv_eisenstein_truncated,
    vv_eval,
    vv_transform_residual,
    weil_rep_of,
)
from .scalar_maass import (
    ScalarMaassExpansion,
    automorphy_factor,
    eval_scalar,
    laplacian_fd,
    plus_space_check,
    scalar_transform_residual,
)
from .spaces import Space
from .special import HalfInteger, upper_incomplete_gamma, upper_incomplete_gamma_scaled

__version__ = "0.1.0"
