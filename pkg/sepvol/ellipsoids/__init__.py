from ._john import (
    classical_sandwich_check,
    john_resolution_check,
    lowner_coefficients_cvx,
    lowner_containment_check,
    random_trace_norm_one,
)
from ._lowner import (
    LownerForm,
    PhiMap,
    alpha_D,
    form_matrix,
    lowner_exponent_identity,
    lowner_inner,
    lowner_inradius,
    oracle_lowner,
    phi_map,
    psi_determinant_identity,
)

__all__ = [
    "LownerForm",
    "PhiMap",
    "alpha_D",
    "phi_map",
    "lowner_inner",
    "lowner_inradius",
    "form_matrix",
    "oracle_lowner",
    "psi_determinant_identity",
    "lowner_exponent_identity",
    "john_resolution_check",
    "lowner_containment_check",
    "classical_sandwich_check",
    "lowner_coefficients_cvx",
    "random_trace_norm_one",
]
