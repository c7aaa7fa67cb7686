import logging
from typing import Callable, Optional

import numpy as np

from sepvol import settings
from sepvol._constants import CONSTANTS, TOLERANCES
from sepvol.bodies import oracle_D, oracle_image, oracle_minkowski_diff
from sepvol.operators import FactorShape
from sepvol.sampling import as_stream, ginibre_states
from sepvol.utils import CheckRecord, chunk_sizes, map_streams, mc_dsp
from sepvol.widths import (
    FractionEstimate,
    WidthEstimate,
    gamma_n,
    gaussian_width_mc,
    vrad_D as exact_vrad_D,
    wilson_estimate,
)

from ._transpose import partial_transpose_batch

logger = logging.getLogger(__name__)

PPT_D_RANGE = (2, 4)


def _check_bipartite(shape: FactorShape):
    lo, hi = PPT_D_RANGE
    if shape.N != 2 or not lo <= shape.D <= hi:
        raise ValueError(f"PPT volume experiments need a D⊗D shape with {lo} ≤ D ≤ {hi}, got {shape}.")


def _check_width_D(width: WidthEstimate, body):
    if width.is_lower_bound:
        raise TypeError(f"width_D must be an exact estimate, got a lower-bound estimate of {width.body}.")
    if not width.gaussian:
        raise ValueError("width_D must be a Gaussian width estimate.")
    if width.body != body.name or width.dim != body.probe_dim:
        raise ValueError(
            f"width_D must estimate {body.name} in dimension {body.probe_dim}, "
            f"got {width.body} in dimension {width.dim}."
        )


@mc_dsp.dedent
def ppt_fraction_mc(
    shape: FactorShape,
    samples: Optional[int] = None,
    stream=None,
    n_workers: Optional[int] = None,
    silent: bool = True,
) -> FractionEstimate:
    """
    Fraction of Hilbert-Schmidt uniform states that are PPT.

    Uniform sampling makes the fraction an unbiased estimate of
    ``vol(PPT)/vol(𝒟)``; ``FractionEstimate.root(n)`` with ``n = d² − 1``
    gives the volume-radius ratio.

    Parameters
    ----------
    %(param_shape)s
    %(param_samples)s
    %(param_stream)s
    %(param_n_workers)s
    %(param_silent)s

    Returns
    -------
    :class:`~sepvol.widths.FractionEstimate` with a Wilson interval.
    """
    _check_bipartite(shape)
    samples = settings.mc_samples if samples is None else int(samples)
    stream = as_stream(stream)
    sizes = chunk_sizes(samples)

    def _chunk(i, child):
        rho = ginibre_states(shape.d, sizes[i], child.generator())
        lam_min = np.linalg.eigvalsh(partial_transpose_batch(rho, shape))[:, 0]
        return int(np.count_nonzero(lam_min >= -TOLERANCES.PPT))

    logger.info(f"Sampling {samples} states of {shape} for the PPT fraction.")
    hits = sum(
        map_streams(
            _chunk,
            len(sizes),
            stream,
            n_workers=n_workers,
            silent=silent,
            description="PPT fraction",
        )
    )
    estimate = wilson_estimate(hits, samples, stream.seed)
    logger.info(f"PPT fraction {estimate.fraction:.5f} in [{estimate.ci_low:.5f}, {estimate.ci_high:.5f}].")
    return estimate


def theorem4_chain(
    shape: FactorShape,
    width_D: Optional[WidthEstimate] = None,
    vrad_D: Optional[float] = None,
    isometry: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    fraction: Optional[FractionEstimate] = None,
    samples: Optional[int] = None,
    stream=None,
) -> CheckRecord:
    """
    Lower bound on ``(vol PPT/vol 𝒟)^{1/n}`` through the width of ``𝒟 − T𝒟``.

    ``PPT = 𝒟 ∩ T𝒟``, so ``vol(𝒟)² ≤ vol(𝒟 − T𝒟) vol(PPT)`` and Urysohn's
    inequality bound ``(vol 𝒟/vol PPT)^{1/n}`` by
    ``w(𝒟 − T𝒟)/vrad(𝒟) = 2 w(𝒟)/vrad(𝒟) ≤ 8``. Every link is checked:
    width additivity within 3σ, the ratio against 8, and the Monte Carlo
    fraction against the ratio; the fraction checks use the point estimate.

    Parameters
    ----------
    shape
        Bipartite ``D⊗D`` shape.
    width_D
        Gaussian width of ``𝒟`` about ``Id/d`` in the trace-zero hyperplane;
        estimated from ``stream.child(0)`` when omitted. A lower-bound
        estimate raises ``TypeError``; a spherical estimate or one of another
        body raises ``ValueError``.
    vrad_D
        ``vrad(𝒟)``; the exact value when omitted.
    isometry
        Self-adjoint isometry fixing ``Id/d``, acting on a batch of raw
        probes. Defaults to the partial transpose.
    fraction
        PPT fraction; estimated from ``stream.child(2)`` when omitted.
    samples
        Monte Carlo sample count for the omitted estimates.
    stream
        Parent stream.
    """
    _check_bipartite(shape)
    stream = as_stream(stream)
    d = shape.d
    n = d * d - 1
    if isometry is None:

        def isometry(u):
            return partial_transpose_batch(u, shape)

    body = oracle_D(shape, centered=True)
    if width_D is None:
        width_D = gaussian_width_mc(body, samples, stream.child(0))
    else:
        _check_width_D(width_D, body)
    if vrad_D is None:
        vrad_D = exact_vrad_D(d)
    if fraction is None:
        fraction = ppt_fraction_mc(shape, samples, stream.child(2))

    image = oracle_image(oracle_D(shape, centered=True), isometry, name="T(D)")
    width_diff = gaussian_width_mc(oracle_minkowski_diff(body, image), samples, stream.child(1))
    gap = width_diff.mean - 2 * width_D.mean
    gap_se = float(np.hypot(width_diff.std_error, 2 * width_D.std_error))

    g = gamma_n(n)
    ratio = 2 * width_D.mean / g / vrad_D
    ratio_upper = 2 * width_D.upper(3.0) / g / vrad_D
    root = fraction.root(n)
    root_high = fraction.ci_high ** (1 / n)
    record = CheckRecord(
        n=n,
        width_D=width_D,
        width_difference=width_diff,
        additivity_gap=float(gap),
        additivity_se=gap_se,
        vrad_D=float(vrad_D),
        ratio=float(ratio),
        fraction=fraction,
        fraction_root=root,
        fraction_root_ci_high=float(root_high),
        c0=CONSTANTS.c0,
        c0_asymptotic=CONSTANTS.c0_asymptotic,
        checks=CheckRecord(
            additivity=bool(abs(gap) <= 3 * gap_se),
            ratio_at_most_8=bool(ratio <= 8),
            fraction_consistent=bool(root * ratio_upper >= 1),
            c0_lower_bound=bool(root >= CONSTANTS.c0),
        ),
    )
    record.passed = all(record.checks.values())
    logger.info(f"PPT width chain for {shape}: 2w/vrad = {ratio:.4f}, passed={record.passed}.")
    return record
