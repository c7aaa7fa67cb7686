import logging

import numpy as np

from sepvol.utils import CheckRecord

from ._gamma import gamma_n, log_ball_volume
from ._montecarlo import WidthEstimate

logger = logging.getLogger(__name__)


def polytope_width_bound(v: int, m: int) -> float:
    """
    Upper bound ``√(2 ln v)/γ_m`` on the mean width of ``conv{±x_i}``.

    Valid for ``v`` vertex pairs in the unit ball of ``ℝᵐ``; it also bounds the
    volume radius of the polytope.

    Parameters
    ----------
    v
        Number of vertex pairs, ``v > 1``.
    m
        Ambient dimension.
    """
    if v <= 1:
        raise ValueError(f"The polytope bound needs v > 1, got {v}.")
    if m < 1:
        raise ValueError(f"m must be positive, got {m}.")
    return float(np.sqrt(2 * np.log(v)) / gamma_n(m))


def urysohn_vrad_bound(width: WidthEstimate, n_sigma: float = 3.0) -> float:
    """
    Conservative upper bound on ``vrad(K)`` from a Gaussian width estimate.

    Urysohn's inequality gives ``vrad(K) ≤ w(K) = w_G(K)/γ_m``; the estimate's
    upper ``n_sigma`` confidence bound is used.

    Raises
    ------
    ValueError
        If ``width`` is a spherical width.
    TypeError
        If ``width`` comes from a lower-bound oracle, which cannot bound vrad from above.
    """
    if not width.gaussian:
        raise ValueError("urysohn_vrad_bound expects a Gaussian width estimate.")
    if width.is_lower_bound:
        raise TypeError(
            f"Width of {width.body} is a lower-bound estimate and cannot bound its volume radius from above."
        )
    return width.upper(n_sigma) / gamma_n(width.dim)


def symmetrization_ratio_bounds(
    vrad_W: float, vrad_Omega: float, n: int, h: float
) -> CheckRecord:
    """
    Check ``2h vol(W) ≤ vol(Ω) ≤ 2h (2ⁿ/(n+1)) vol(W)`` in log space.

    ``W`` is an ``n``-dimensional body in an affine hyperplane at distance ``h``
    from the origin and ``Ω = conv(W ∪ −W)`` is ``(n+1)``-dimensional.

    Parameters
    ----------
    vrad_W
        Volume radius of ``W`` in dimension ``n``.
    vrad_Omega
        Volume radius of ``Ω`` in dimension ``n + 1``.
    n
        Dimension of ``W``.
    h
        Distance from the hyperplane to the origin.

    Returns
    -------
    :class:`~sepvol.utils.CheckRecord` with the log-volumes, the slack of each
    side, the Rogers-Shephard factor and its ``n``-th root, and the ratio
    ``(vol Ω/vol W)`` raised to both ``1/n`` and ``1/(n+1)``.
    """
    if min(vrad_W, vrad_Omega, h) <= 0 or n < 1:
        raise ValueError("symmetrization_ratio_bounds needs positive inputs.")
    log_W = n * np.log(vrad_W) + log_ball_volume(n)
    log_Omega = (n + 1) * np.log(vrad_Omega) + log_ball_volume(n + 1)
    log_rs = n * np.log(2) - np.log(n + 1)
    lower_slack = log_Omega - (np.log(2 * h) + log_W)
    upper_slack = np.log(2 * h) + log_rs + log_W - log_Omega
    log_ratio = log_Omega - log_W
    record = CheckRecord(
        log_vol_W=float(log_W),
        log_vol_Omega=float(log_Omega),
        lower_slack=float(lower_slack),
        upper_slack=float(upper_slack),
        rogers_shephard_factor=float(np.exp(log_rs)),
        rogers_shephard_root=float(np.exp(log_rs / n)),
        ratio_root_n=float(np.exp(log_ratio / n)),
        ratio_root_n_plus_1=float(np.exp(log_ratio / (n + 1))),
        passed=bool(lower_slack >= -1e-12 and upper_slack >= -1e-12),
    )
    logger.debug(f"Symmetrization slacks: {lower_slack:.3e}, {upper_slack:.3e}")
    return record


def transfer_to_states(log_ratio_low: float, log_ratio_high: float, n: int) -> CheckRecord:
    """
    Transfer bounds on ``ln(vol Σ/vol Δ)`` to ``(vol 𝒮/vol 𝒟)^{1/n}``.

    Applying the symmetrization inequalities to both pairs gives
    ``½ (vol Σ/vol Δ)^{1/n} ≤ (vol 𝒮/vol 𝒟)^{1/n} ≤ 2 (vol Σ/vol Δ)^{1/n}``;
    the sharper factors ``(n+1)^{±1/n}/2`` are reported too.

    Parameters
    ----------
    log_ratio_low, log_ratio_high
        Lower and upper bounds on ``ln(vol Σ/vol Δ)``.
    n
        Dimension of ``𝒮`` and ``𝒟``, i.e. ``d² − 1``.
    """
    root_low = np.exp(log_ratio_low / n)
    root_high = np.exp(log_ratio_high / n)
    sharp = (n + 1) ** (1 / n)
    return CheckRecord(
        lower=float(root_low / 2),
        upper=float(2 * root_high),
        lower_sharp=float(sharp * root_low / 2),
        upper_sharp=float(2 * root_high / sharp),
    )
