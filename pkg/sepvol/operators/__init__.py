from ._hermitian import (
    DensityMatrix,
    HermitianOp,
    ProductVector,
    eigh,
    hermitian_part,
    hs_inner,
    operator_norm,
    spectrum,
    tensor,
    trace_norm,
)
from ._maps import (
    factorwise_map,
    from_coordinates,
    hs_basis,
    to_coordinates,
    traceless_project,
)
from ._shape import MAX_DIM, FactorShape

__all__ = [
    "FactorShape",
    "MAX_DIM",
    "HermitianOp",
    "DensityMatrix",
    "ProductVector",
    "hs_inner",
    "trace_norm",
    "operator_norm",
    "tensor",
    "hermitian_part",
    "traceless_project",
    "factorwise_map",
    "spectrum",
    "eigh",
    "hs_basis",
    "to_coordinates",
    "from_coordinates",
]
