from ._net import SphereNet, build_net, covering_radius, load_net, save_net
from ._polytope import (
    DELTA_MAX,
    NetPolytope,
    default_delta,
    lemma3_sandwich_check,
    sampled_polytope_width_check,
    sandwich_factor,
    sigma_width_upper,
    sigma_width_upper_report,
)

__all__ = [
    "SphereNet",
    "NetPolytope",
    "DELTA_MAX",
    "build_net",
    "covering_radius",
    "save_net",
    "load_net",
    "sandwich_factor",
    "lemma3_sandwich_check",
    "default_delta",
    "sigma_width_upper",
    "sigma_width_upper_report",
    "sampled_polytope_width_check",
]
