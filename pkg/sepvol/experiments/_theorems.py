import logging
from typing import Optional

import numpy as np

from sepvol import settings
from sepvol._constants import CONSTANTS
from sepvol.bodies import oracle_Delta, oracle_Sigma
from sepvol.ellipsoids import (
    alpha_D,
    lowner_exponent_identity,
    lowner_inradius,
    phi_map,
    psi_determinant_identity,
)
from sepvol.nets import sigma_width_upper_report
from sepvol.operators import FactorShape, HermitianOp
from sepvol.ppt import (
    is_ppt,
    ppt_fraction_mc,
    theorem4_chain,
    werner_ppt_threshold,
)
from sepvol.sampling import as_stream
from sepvol.tensor_norms import (
    TensorPowerBall,
    inradius_inclusion_sigma,
    vrad_tensor_power_bound,
)
from sepvol.utils import CheckRecord
from sepvol.widths import gaussian_width_mc, transfer_to_states

from ._report import ReportBuilder, TheoremReport

logger = logging.getLogger(__name__)

THEOREM3_N_RANGE = (2, 6)
ALPHA_TABLE_D = (2, 3, 4, 5, 6)


def _grid_point(D: int, N: int) -> FactorShape:
    if D < 2 or N < 2:
        raise ValueError(f"Theorem harnesses need D ≥ 2 and N ≥ 2, got D={D}, N={N}.")
    return FactorShape(D, N)


def _samples(samples: Optional[int]) -> int:
    samples = settings.mc_samples if samples is None else int(samples)
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}.")
    return samples


def _transfer(builder: ReportBuilder, shape: FactorShape, lower_root: float, upper_root: float):
    """Move bounds on ``(vol Σ/vol Δ)^{1/d²}`` to ``(vol 𝒮/vol 𝒟)^{1/n}``."""
    d = shape.d
    n = d * d - 1
    transfer = transfer_to_states(d * d * np.log(lower_root), d * d * np.log(upper_root), n)
    builder.bound("sigma_over_delta_lower", lower_root)
    builder.bound("sigma_over_delta_upper", upper_root)
    builder.bound("states_lower", transfer.lower)
    builder.bound("states_upper", transfer.upper)
    # both exponents, 1/n and 1/d²
    builder.bound("states_lower_same_exponent", lower_root / 2)
    builder.bound("states_upper_same_exponent", 2 * upper_root)
    builder.bound("states_lower_sharp", transfer.lower_sharp)
    builder.bound("states_upper_sharp", transfer.upper_sharp)
    builder.at_most("lower_below_upper", transfer.lower, transfer.upper)
    return transfer


def _two_qubit_reference(builder: ReportBuilder, shape: FactorShape, transfer, samples, stream):
    """PPT and separable states coincide on ``ℂ² ⊗ ℂ²``; compare their volume ratio with the bounds."""
    n = shape.d**2 - 1

    def _root_interval(s, st):
        f = ppt_fraction_mc(shape, s, st)
        return f.ci_low ** (1 / n), f.ci_high ** (1 / n)

    root = builder.monte_carlo(
        "separable_fraction_above_lower", "at_least", _root_interval, transfer.lower, samples, stream
    )
    builder.at_most("separable_fraction_below_upper", root, transfer.upper)


def run_theorem1(
    D: int, N: int, samples: Optional[int] = None, seed: Optional[int] = None
) -> TheoremReport:
    """
    Volume ratio of separable states in ``(ℂᴰ)^{⊗N}`` against the Hilbert-Schmidt geometry.

    The lower bound comes from the certified inradius of ``Σ`` and
    ``vrad(Δ) ≤ 2/√d``; the upper one from the net-polytope width bound and
    ``vrad(Δ) ≥ 1/√d``. Both are moved from the symmetrized bodies to the
    states. Monte Carlo checks: ``1/√d ≤ w(Δ) ≤ 2/√d``, the lower-bound estimate
    of ``w(Σ)`` stays below the width bound, and at ``D = N = 2`` the PPT
    volume fraction lies between the bounds.

    Parameters
    ----------
    D
        Local dimension.
    N
        Number of factors, ``d = Dᴺ ≤ 256``.
    samples
        Monte Carlo samples per estimate. Defaults to ``sepvol.settings.mc_samples``.
    seed
        Root seed. Defaults to ``sepvol.settings.seed``.
    """
    shape = _grid_point(D, N)
    samples = _samples(samples)
    stream = as_stream(seed)
    d = shape.d
    builder = ReportBuilder(1, {"D": D, "N": N, "d": d, "samples": samples}, stream.seed)

    inradius = inradius_inclusion_sigma(shape)
    builder.bound("inradius_sigma", inradius.radius)
    builder.bound("inradius_sigma_sharp", inradius.radius_sharp)
    lower_root = inradius.radius / (2 / np.sqrt(d))
    chain_form = 0.75 * 6 ** (-N / 2) / d ** (0.5 - 0.5 / N)
    builder.close_to("lower_chain_form", lower_root, chain_form, tol=1e-12 * chain_form)

    widths = sigma_width_upper_report(shape, ellipsoid="hs_ball")
    builder.bound("sigma_width_upper", widths)
    upper_root = np.sqrt(d) * widths.bound
    transfer = _transfer(builder, shape, lower_root, upper_root)

    exponent = 0.5 - 0.5 / N
    builder.bound("stated_lower", CONSTANTS.c**N / d**exponent)
    builder.bound("stated_upper", CONSTANTS.C * np.sqrt(N * np.log(N)) / d**exponent)

    width_delta = builder.monte_carlo(
        "width_delta_at_most_2_over_sqrt_d",
        "at_most",
        lambda s, st: gaussian_width_mc(oracle_Delta(shape), s, st).spherical(),
        2 / np.sqrt(d),
        samples,
        stream.child(0),
    )
    builder.at_least("width_delta_at_least_1_over_sqrt_d", width_delta, 1 / np.sqrt(d))

    sigma = oracle_Sigma(shape, stream=stream.child(2))
    builder.monte_carlo(
        "width_sigma_below_bound",
        "at_most",
        lambda s, st: gaussian_width_mc(sigma, s, st).spherical(),
        widths.bound,
        samples,
        stream.child(1),
    )
    if D == 2 and N == 2:
        _two_qubit_reference(builder, shape, transfer, samples, stream.child(3))
    return builder.build()


def run_theorem2(
    D: int, N: int, samples: Optional[int] = None, seed: Optional[int] = None
) -> TheoremReport:
    """
    Volume ratio of separable states measured against the Löwner ellipsoid of ``Σ``.

    ``1/d ≤ (vol Σ/vol Löw(Σ))^{1/d²}`` from the classical sandwich, the upper
    bound from the net polytope in the Löwner geometry, and
    ``vol Löw(Σ)/vol B_HS = d^{−α_D d²}``. The same tail as for the
    Hilbert-Schmidt version turns these into bounds for the states.

    Parameters
    ----------
    D
        Local dimension.
    N
        Number of factors.
    samples
        Monte Carlo samples for the two-qubit reference point.
    seed
        Root seed.
    """
    shape = _grid_point(D, N)
    samples = _samples(samples)
    stream = as_stream(seed)
    d = shape.d
    builder = ReportBuilder(2, {"D": D, "N": N, "d": d, "samples": samples}, stream.seed)

    alpha = alpha_D(D)
    builder.bound("alpha_D", alpha)
    builder.bound("alpha_table", {str(k): alpha_D(k) for k in ALPHA_TABLE_D})
    builder.record("determinant_identity", psi_determinant_identity(D, N))
    builder.record("exponent_identity", lowner_exponent_identity(D, N))
    det_root = float(np.exp(phi_map(D).log_det_power(N) / (d * d)))
    builder.bound("lowner_volume_radius", det_root)

    lowner = sigma_width_upper_report(shape, ellipsoid="lowner")
    hs = sigma_width_upper_report(shape, ellipsoid="hs_ball")
    builder.bound("sigma_width_upper_lowner", lowner)
    builder.bound("sigma_width_upper_hs", hs)
    builder.at_most("lowner_bound_sharper", lowner.bound, hs.bound)

    lower_root = (det_root / d) / (2 / np.sqrt(d))
    closed = d ** (-0.5 - alpha) / 2
    builder.close_to("lower_closed_form", lower_root, closed, tol=1e-12 * closed)
    upper_root = np.sqrt(d) * lowner.bound
    transfer = _transfer(builder, shape, lower_root, upper_root)

    scale = d ** (0.5 + alpha)
    builder.bound("stated_lower", CONSTANTS.c_prime / scale)
    builder.bound("stated_upper", CONSTANTS.C_prime * np.sqrt(D * N * np.log(N)) / scale)
    builder.bound(
        "asymptotic_constants",
        {
            "c_prime": CONSTANTS.c_prime_asymptotic,
            "C": CONSTANTS.C_asymptotic,
            "C_prime": CONSTANTS.C_asymptotic,
        },
    )
    if D == 2 and N == 2:
        _two_qubit_reference(builder, shape, transfer, samples, stream.child(3))
    return builder.build()


def run_theorem3(
    N: int, samples: Optional[int] = None, seed: Optional[int] = None
) -> TheoremReport:
    """
    Inradius of ``Σ`` for ``N`` qubits: upper bound through the width of a projection.

    The projection of ``Σ`` onto ``Π = P^{⊗N}`` (``P`` the projection onto
    trace-zero ``2 × 2`` matrices) is congruent to ``2^{−N/2}(B₂³)^{⊗̂N}``,
    whose mean width bounds the inradius from above. The analytic width bound
    is compared with ``√3 C₁ √(N ln N) 6^{−N/2}`` and with a Monte Carlo lower
    estimate; the certified inradii ``6^{−N/2}`` (Löwner) and
    ``3/2·6^{−N/2}·2^{−(2N−1)/2}`` are compared with both.

    Parameters
    ----------
    N
        Number of qubits, ``2 ≤ N ≤ 6``.
    samples
        Monte Carlo samples for the width estimate.
    seed
        Root seed.
    """
    lo, hi = THEOREM3_N_RANGE
    if not lo <= N <= hi:
        raise ValueError(f"N must lie in [{lo}, {hi}], got {N}.")
    samples = _samples(samples)
    stream = as_stream(seed)
    shape = FactorShape(2, N)
    builder = ReportBuilder(3, {"D": 2, "N": N, "d": shape.d, "samples": samples}, stream.seed)

    tensor_bound = vrad_tensor_power_bound(3, N, "real")
    analytic = 2 ** (-N / 2) * tensor_bound.bound
    closed = np.sqrt(3) * CONSTANTS.C1 * np.sqrt(N * np.log(N)) * 6 ** (-N / 2)
    builder.bound("tensor_power_bound", tensor_bound._asdict())
    builder.bound("width_projection_upper", analytic)
    builder.bound("width_projection_closed_form", closed)
    builder.at_most("analytic_below_closed_form", analytic, closed)

    ball = TensorPowerBall(3, N, "real", stream=stream.child(2))
    width = builder.monte_carlo(
        "mc_width_below_analytic",
        "at_most",
        lambda s, st: gaussian_width_mc(ball, s, st).spherical().scaled(2 ** (-N / 2)),
        analytic,
        samples,
        stream.child(0),
    )

    inradius_lowner = lowner_inradius(shape)
    inradius_chain = inradius_inclusion_sigma(shape).radius
    stated_upper = CONSTANTS.C0 * np.sqrt(N * np.log(N)) * 6 ** (-N / 2)
    builder.bound("inradius_lowner", inradius_lowner)
    builder.bound("inradius_chain", inradius_chain)
    builder.bound("inradius_upper", stated_upper)
    builder.at_most("inradius_below_mc_width", max(inradius_lowner, inradius_chain), width)
    builder.at_most("inradius_below_analytic", inradius_lowner, analytic)
    builder.at_most("inradius_below_stated_upper", inradius_lowner, stated_upper)

    gap = stated_upper / inradius_lowner
    builder.bound("gap_factor", gap)
    builder.close_to(
        "gap_factor_closed_form", gap, CONSTANTS.C0 * np.sqrt(N * np.log(N)), tol=1e-12 * gap
    )
    return builder.build()


def run_theorem4(
    D: int, samples: Optional[int] = None, seed: Optional[int] = None
) -> TheoremReport:
    """
    PPT states keep a constant share of the volume radius of ``𝒟`` on ``ℂᴰ ⊗ ℂᴰ``.

    Runs :func:`~sepvol.ppt.theorem4_chain` (retried once with four times the
    samples on failure), the isotropic PPT boundary ``1/(D + 1)`` and the
    maximally mixed sanity row.

    Parameters
    ----------
    D
        Local dimension, 2 or 3.
    samples
        Monte Carlo samples per estimate.
    seed
        Root seed.
    """
    if D not in (2, 3):
        raise ValueError(f"The PPT-volume harness supports D in {{2, 3}}, got {D}.")
    samples = _samples(samples)
    stream = as_stream(seed)
    shape = FactorShape(D, 2)
    builder = ReportBuilder(4, {"D": D, "N": 2, "d": shape.d, "samples": samples}, stream.seed)

    chain = theorem4_chain(shape, samples=samples, stream=stream.child(0))
    retried = False
    if not chain.passed:
        logger.info(f"Retrying the PPT width chain with {4 * samples} samples.")
        chain = theorem4_chain(shape, samples=4 * samples, stream=stream.child(1))
        builder.retries.append("ppt_width_chain")
        retried = True
    for name, ok in chain.checks.items():
        builder.record(name, CheckRecord(passed=ok, retried=retried))
    for name in ("width_D", "width_difference", "fraction"):
        builder.estimate(name, chain[name])
    for name in ("vrad_D", "ratio", "fraction_root", "fraction_root_ci_high", "c0", "c0_asymptotic"):
        builder.bound(name, chain[name])

    mixed = HermitianOp.identity(shape) / shape.d
    builder.record("maximally_mixed_is_ppt", CheckRecord(passed=is_ppt(mixed).is_ppt))
    threshold = werner_ppt_threshold(D)
    builder.bound("isotropic_ppt_boundary", threshold)
    builder.close_to("isotropic_ppt_boundary", threshold, 1 / (D + 1), tol=1e-9)
    return builder.build()
