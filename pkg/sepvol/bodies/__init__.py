from ._alternating import (
    bilinear_product_max,
    hermitian_product_max,
    initial_factors,
    multilinear_max,
)
from ._base import BodyOracle, OperatorBody, VectorBody, combine_exactness
from ._oracles import (
    euclidean_ball,
    oracle_D,
    oracle_Delta,
    oracle_Gamma_ball,
    oracle_image,
    oracle_minkowski_diff,
    oracle_Sigma,
    segment,
    symmetric_polytope,
)

__all__ = [
    "BodyOracle",
    "OperatorBody",
    "VectorBody",
    "combine_exactness",
    "oracle_D",
    "oracle_Delta",
    "oracle_Sigma",
    "oracle_Gamma_ball",
    "oracle_minkowski_diff",
    "oracle_image",
    "euclidean_ball",
    "segment",
    "symmetric_polytope",
    "hermitian_product_max",
    "bilinear_product_max",
    "multilinear_max",
    "initial_factors",
]
