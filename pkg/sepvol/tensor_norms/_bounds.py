import logging
from functools import lru_cache
from typing import Literal, NamedTuple

import numpy as np
from scipy.optimize import minimize_scalar

from sepvol._constants import CONSTANTS
from sepvol.operators import FactorShape
from sepvol.utils import CheckRecord
from sepvol.widths import gamma_n, log_gamma_n

logger = logging.getLogger(__name__)

Field = Literal["real", "complex"]


def chevet_gordon_bound(wG_K: float, wG_Kp: float) -> float:
    """
    ``w_G(K ⊗̂ K′) ≤ w_G(K) + w_G(K′)``.

    Valid for ``K``, ``K′`` inside their unit balls with one of them spanned by
    points of the sphere.
    """
    if wG_K < 0 or wG_Kp < 0:
        raise ValueError("Gaussian widths of bodies containing the origin are non-negative.")
    return float(wG_K + wG_Kp)


def chevet_gordon_spherical(w_K: float, w_Kp: float, n: int, n_prime: int) -> float:
    """Spherical form ``w(K⊗̂K′) ≤ (γ_n/γ_{nn′}) w(K) + (γ_{n′}/γ_{nn′}) w(K′)``."""
    g = gamma_n(n * n_prime)
    return float(gamma_n(n) / g * w_K + gamma_n(n_prime) / g * w_Kp)


class TensorPowerBound(NamedTuple):
    bound: float
    delta: float
    method: str


def _real_dim(D: int, m: int, field: Field) -> int:
    return D**m if field == "real" else 2 * D**m


def _log_net_cardinality(D: int, delta: float, field: Field) -> float:
    if field == "complex":
        return 2 * D * np.log1p(2 / delta)
    if D == 3:
        return 2 * np.log(4 / delta)
    return D * np.log1p(2 / delta)


def net_width_bound(D: int, m: int, delta: float, field: Field = "real") -> float:
    """
    Mean-width bound on ``(B₂ᴰ)^{⊗̂m}`` from a ``δ``-net of the sphere.

    The hull of the ``m``-th tensor power of the net contains
    ``(1 − δ²/2)ᵐ (B₂ᴰ)^{⊗̂m}``, so the polytope bound gives
    ``w < γ^{-1} (1 − δ²/2)^{−m} √(2 m ln #𝒩)``. Net cardinalities are
    ``16/δ²`` on ``S²``, ``(1 + 2/δ)ᴰ`` on real spheres, ``(1 + 2/δ)^{2D}`` on
    complex ones.
    """
    if not 0 < delta < np.sqrt(2):
        raise ValueError(f"delta must lie in (0, √2), got {delta}.")
    log_card = _log_net_cardinality(D, delta, field)
    log_value = (
        -log_gamma_n(_real_dim(D, m, field))
        - m * np.log1p(-(delta**2) / 2)
        + 0.5 * np.log(2 * m * log_card)
    )
    return float(np.exp(log_value))


def _optimal_delta(D: int, m: int, field: Field):
    res = minimize_scalar(
        lambda t: np.log(net_width_bound(D, m, t, field)),
        bounds=(1e-6, np.sqrt(2) - 1e-6),
        method="bounded",
        options={"xatol": 1e-10},
    )
    candidates = [(float(np.exp(res.fun)), float(res.x))]
    default = 1 / np.sqrt(m * np.log(2 * m))
    candidates.append((net_width_bound(D, m, default, field), float(default)))
    return min(candidates)


@lru_cache(maxsize=None)
def _gaussian_width_bound(D: int, m: int, field: Field):
    """``(W_G, δ, method)`` minimizing over the net bound and Chevet-Gordon splits."""
    if m == 1:
        return gamma_n(_real_dim(D, 1, field)), float("nan"), "ball"
    net, delta = _optimal_delta(D, m, field)
    best = (net * gamma_n(_real_dim(D, m, field)), delta, "net")
    for a in range(1, m // 2 + 1):
        wa = _gaussian_width_bound(D, a, field)[0]
        wb = _gaussian_width_bound(D, m - a, field)[0]
        if wa + wb < best[0]:
            best = (wa + wb, float("nan"), f"chevet_gordon({a},{m - a})")
    return best


def vrad_tensor_power_bound(D: int, m: int, field: Field = "real") -> TensorPowerBound:
    """
    Upper bound on ``vrad((B₂ᴰ)^{⊗̂m}) ≤ w((B₂ᴰ)^{⊗̂m})``.

    The net bound is minimized over ``δ ∈ (0, √2)`` (the default
    ``δ = 1/√(m ln 2m)`` is also tried). Chevet-Gordon subadditivity
    ``w_G(K^{⊗̂(a+b)}) ≤ w_G(K^{⊗̂a}) + w_G(K^{⊗̂b})`` gives a competing bound,
    sharper for small ``m``; the smaller one is returned.

    Parameters
    ----------
    D
        Dimension of each ball.
    m
        Number of factors, ``m ≥ 2``.
    field
        Real or complex balls.

    Returns
    -------
    :class:`TensorPowerBound` with the spherical-width bound, the minimizing
    ``δ`` (``nan`` when Chevet-Gordon wins) and the method.
    """
    if m < 2:
        raise ValueError(f"vrad_tensor_power_bound needs m ≥ 2, got {m}.")
    if field not in ("real", "complex"):
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}.")
    wG, delta, method = _gaussian_width_bound(int(D), int(m), field)
    bound = wG / gamma_n(_real_dim(D, m, field))
    logger.debug(f"Tensor power bound D={D}, m={m}: {bound:.6g} via {method}.")
    return TensorPowerBound(float(bound), delta, method)


def inradius_inclusion_sigma(shape: FactorShape) -> CheckRecord:
    """
    Certified Hilbert-Schmidt inradius of ``Σ`` about the origin.

    ``Σ ⊃ d_N^{-1} π(Γ)`` with ``d_N ≤ (2/3)·6^{N/2}``, and ``π(Γ)`` contains the
    ball of radius ``D^{−(2N−1)/2}``, giving ``3/2 · 6^{−N/2} · D^{−(2N−1)/2}``.

    Returns
    -------
    :class:`~sepvol.utils.CheckRecord` with ``radius`` and, for comparison, the
    radii from the bounds ``d_N ≤ 6^{N/2}`` and ``d_N ≤ (3^{N−1}(2^N − 1))^{1/2}``.
    """
    D, N = shape.D, shape.N
    gamma_radius = D ** (-(2 * N - 1) / 2)
    d_N = CONSTANTS.DN_COEF * 6 ** (N / 2)
    d_N_chain = 6 ** (N / 2)
    d_N_sharp = np.sqrt(3 ** (N - 1) * (2**N - 1))
    return CheckRecord(
        radius=float(gamma_radius / d_N),
        radius_chain=float(gamma_radius / d_N_chain),
        radius_sharp=float(gamma_radius / d_N_sharp),
        d_N=float(d_N),
        d_N_chain=float(d_N_chain),
        d_N_sharp=float(d_N_sharp),
    )
