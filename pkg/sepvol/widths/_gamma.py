import numpy as np
from scipy.special import gammaln

D_RANGE = (2, 64)


def log_gamma_n(m: int) -> float:
    """``ln γ_m``."""
    if m < 1:
        raise ValueError(f"gamma_n needs m ≥ 1, got {m}.")
    return float(0.5 * np.log(2) + gammaln((m + 1) / 2) - gammaln(m / 2))


def gamma_n(m: int) -> float:
    """
    Expected norm of a standard Gaussian vector in ``ℝᵐ``.

    ``γ_m = √2 Γ((m+1)/2)/Γ(m/2)``, evaluated through log-Gamma.

    Parameters
    ----------
    m
        Dimension, ``m ≥ 1``.

    Examples
    --------
    >>> round(gamma_n(2), 5)  # √(π/2)
    1.25331
    """
    return float(np.exp(log_gamma_n(m)))


def log_ball_volume(m: int) -> float:
    """``ln vol(B₂ᵐ) = (m/2) ln π − ln Γ(m/2 + 1)``."""
    if m < 1:
        raise ValueError(f"Ball dimension must be positive, got {m}.")
    return float(0.5 * m * np.log(np.pi) - gammaln(m / 2 + 1))


def vrad_from_log_volume(log_volume: float, m: int) -> float:
    """Radius of the ``m``-ball with volume ``exp(log_volume)``."""
    return float(np.exp((log_volume - log_ball_volume(m)) / m))


def vol_D_exact(d: int) -> float:
    """
    Logarithm of the volume of the state space ``𝒟`` of ``ℂᵈ``.

    ``vol(𝒟) = √d (2π)^{d(d−1)/2} Γ(1)⋯Γ(d)/Γ(d²)``, with volume taken in the
    trace-one hyperplane with the Hilbert-Schmidt metric.

    Parameters
    ----------
    d
        Dimension, ``2 ≤ d ≤ 64``.

    Returns
    -------
    ``ln vol(𝒟)``.
    """
    lo, hi = D_RANGE
    if int(d) != d or not lo <= d <= hi:
        raise ValueError(f"d must be an integer in [{lo}, {hi}], got {d}.")
    d = int(d)
    k = np.arange(1, d + 1)
    return float(
        0.5 * np.log(d)
        + 0.5 * d * (d - 1) * np.log(2 * np.pi)
        + gammaln(k).sum()
        - gammaln(d * d)
    )


def vrad_D(d: int) -> float:
    """``vrad(𝒟) = (vol(𝒟)/vol(B₂ⁿ))^{1/n}`` with ``n = d² − 1``."""
    return vrad_from_log_volume(vol_D_exact(d), d * d - 1)
