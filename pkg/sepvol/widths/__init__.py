from ._bounds import (
    polytope_width_bound,
    symmetrization_ratio_bounds,
    transfer_to_states,
    urysohn_vrad_bound,
)
from ._gamma import (
    gamma_n,
    log_ball_volume,
    log_gamma_n,
    vol_D_exact,
    vrad_D,
    vrad_from_log_volume,
)
from ._montecarlo import (
    FractionEstimate,
    WidthEstimate,
    gaussian_width_mc,
    mc_volume,
    mean_width_mc,
    wilson_estimate,
)

__all__ = [
    "WidthEstimate",
    "FractionEstimate",
    "gamma_n",
    "log_gamma_n",
    "log_ball_volume",
    "vrad_from_log_volume",
    "vol_D_exact",
    "vrad_D",
    "gaussian_width_mc",
    "mean_width_mc",
    "mc_volume",
    "wilson_estimate",
    "polytope_width_bound",
    "urysohn_vrad_bound",
    "symmetrization_ratio_bounds",
    "transfer_to_states",
]
