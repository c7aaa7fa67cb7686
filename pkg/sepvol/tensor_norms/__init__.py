from ._bounds import (
    TensorPowerBound,
    chevet_gordon_bound,
    chevet_gordon_spherical,
    inradius_inclusion_sigma,
    net_width_bound,
    vrad_tensor_power_bound,
)
from ._generalized import GeneralizedMatrix, TensorPowerBall, injective_norm
from ._slices import SliceCertificate, slice_lower_bound

__all__ = [
    "GeneralizedMatrix",
    "SliceCertificate",
    "TensorPowerBall",
    "TensorPowerBound",
    "injective_norm",
    "slice_lower_bound",
    "chevet_gordon_bound",
    "chevet_gordon_spherical",
    "net_width_bound",
    "vrad_tensor_power_bound",
    "inradius_inclusion_sigma",
]
