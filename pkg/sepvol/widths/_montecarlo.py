import logging
from dataclasses import asdict, dataclass, replace
from typing import Callable, Optional

import numpy as np
from scipy.stats import binomtest

from sepvol import settings
from sepvol.bodies import BodyOracle
from sepvol.sampling import as_stream
from sepvol.utils import chunk_sizes, map_streams, mc_dsp

from ._gamma import gamma_n

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WidthEstimate:
    """
    Monte Carlo estimate of a (Gaussian or spherical) mean width.

    Parameters
    ----------
    mean
        Sample mean of the support function over the probes.
    std_error
        Sample standard deviation divided by ``√samples``.
    samples
        Number of probes, at least 2.
    seed
        Seed of the stream the probes were drawn from.
    body
        Name of the body.
    gaussian
        ``True`` for ``w_G``, ``False`` for the spherical mean width ``w``.
    exactness
        ``"lower_bound"`` when the support oracle only certifies lower values; the
        estimate is then a lower-bound estimate.
    dim
        Real dimension of the probe space, used for ``w = w_G/γ_dim``.
    stream_index
        Index of the stream the probes were drawn from.
    """

    mean: float
    std_error: float
    samples: int
    seed: int
    body: str
    gaussian: bool
    exactness: str = "exact"
    dim: int = 0
    stream_index: int = 0

    def __post_init__(self):
        if self.samples < 2:
            raise ValueError(f"A width estimate needs at least 2 samples, got {self.samples}.")

    @property
    def is_lower_bound(self) -> bool:
        return self.exactness == "lower_bound"

    def upper(self, n_sigma: float = 3.0) -> float:
        return self.mean + n_sigma * self.std_error

    def lower(self, n_sigma: float = 3.0) -> float:
        return self.mean - n_sigma * self.std_error

    def spherical(self) -> "WidthEstimate":
        """Convert ``w_G`` to ``w`` by the exact factor ``1/γ_dim``."""
        if not self.gaussian:
            return self
        g = gamma_n(self.dim)
        return replace(self, mean=self.mean / g, std_error=self.std_error / g, gaussian=False)

    def scaled(self, factor: float) -> "WidthEstimate":
        """Width of ``factor · K`` for ``factor > 0``."""
        if factor <= 0:
            raise ValueError(f"Scaling factor must be positive, got {factor}.")
        return replace(self, mean=self.mean * factor, std_error=self.std_error * factor)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class FractionEstimate:
    """
    Monte Carlo estimate of a probability with a Wilson confidence interval.

    Parameters
    ----------
    hits
        Number of successes.
    samples
        Number of trials.
    ci_low, ci_high
        Wilson interval at ``confidence``.
    seed
        Seed of the stream the trials were drawn from.
    confidence
        Confidence level of the interval.
    """

    hits: int
    samples: int
    ci_low: float
    ci_high: float
    seed: int
    confidence: float = 0.997

    @property
    def fraction(self) -> float:
        return self.hits / self.samples

    @property
    def std_error(self) -> float:
        p = self.fraction
        return float(np.sqrt(max(p * (1 - p), 0.0) / self.samples))

    def root(self, n: int) -> float:
        """``fraction^{1/n}``."""
        return float(self.fraction ** (1 / n))

    def to_dict(self) -> dict:
        out = asdict(self)
        out["fraction"] = self.fraction
        return out


def wilson_estimate(
    hits: int, samples: int, seed: int, confidence: float = 0.997
) -> FractionEstimate:
    """Wrap a hit count with its Wilson interval."""
    ci = binomtest(int(hits), int(samples)).proportion_ci(
        confidence_level=confidence, method="wilson"
    )
    return FractionEstimate(
        hits=int(hits),
        samples=int(samples),
        ci_low=float(ci.low),
        ci_high=float(ci.high),
        seed=seed,
        confidence=confidence,
    )


@mc_dsp.dedent
def gaussian_width_mc(
    body: BodyOracle,
    samples: Optional[int] = None,
    stream=None,
    n_workers: Optional[int] = None,
    silent: bool = True,
) -> WidthEstimate:
    """
    Estimate the Gaussian mean width ``w_G(K) = E h_K(G)``.

    Probes are standard Gaussians of the body's probe space. Chunk ``i`` of the
    probes is drawn from ``stream.child(i)``, so the estimate only depends on
    the seed and the sample count.

    Parameters
    ----------
    body
        Support-function oracle.
    %(param_samples)s
    %(param_stream)s
    %(param_n_workers)s
    %(param_silent)s

    Returns
    -------
    :class:`WidthEstimate` with ``gaussian=True``; flagged as a lower-bound
    estimate when the oracle is.
    """
    samples = settings.mc_samples if samples is None else int(samples)
    if samples < 2:
        raise ValueError(f"samples must be at least 2, got {samples}.")
    stream = as_stream(stream)
    sizes = chunk_sizes(samples, body.chunk_size)

    def _chunk(i, child):
        probes = body.gaussian_probes(sizes[i], child.generator())
        return body.support_batch(probes)

    logger.info(f"Estimating w_G({body.name}) with {samples} probes.")
    values = np.concatenate(
        map_streams(
            _chunk,
            len(sizes),
            stream,
            n_workers=n_workers,
            silent=silent,
            description=f"w_G({body.name})",
        )
    )
    estimate = WidthEstimate(
        mean=float(values.mean()),
        std_error=float(values.std(ddof=1) / np.sqrt(samples)),
        samples=samples,
        seed=stream.seed,
        body=body.name,
        gaussian=True,
        exactness=body.exactness,
        dim=body.probe_dim,
        stream_index=stream.stream_index,
    )
    logger.debug(f"w_G({body.name}) = {estimate.mean:.6f} ± {estimate.std_error:.2e}")
    return estimate


@mc_dsp.dedent
def mean_width_mc(
    body: BodyOracle,
    samples: Optional[int] = None,
    stream=None,
    n_workers: Optional[int] = None,
    silent: bool = True,
) -> WidthEstimate:
    """
    Estimate the spherical mean width ``w(K) = w_G(K)/γ_m``.

    Parameters
    ----------
    body
        Support-function oracle.
    %(param_samples)s
    %(param_stream)s
    %(param_n_workers)s
    %(param_silent)s
    """
    return gaussian_width_mc(body, samples, stream, n_workers, silent).spherical()


@mc_dsp.dedent
def mc_volume(
    membership: Callable[[np.ndarray], np.ndarray],
    dim: int,
    samples: Optional[int] = None,
    stream=None,
    half_width: float = 1.0,
    n_workers: Optional[int] = None,
    silent: bool = True,
):
    """
    Rejection-sampling volume of a body inside the cube ``[−a, a]^dim``.

    Parameters
    ----------
    membership
        Boolean membership test on a leading batch axis of points in ``ℝ^dim``.
    dim
        Dimension of the space.
    %(param_samples)s
    %(param_stream)s
    half_width
        Half side ``a`` of the enclosing cube; the body must lie inside it.
    %(param_n_workers)s
    %(param_silent)s

    Returns
    -------
    Tuple of the volume estimate, its confidence interval scaled to volume,
    and the underlying :class:`FractionEstimate`.
    """
    samples = settings.mc_samples if samples is None else int(samples)
    stream = as_stream(stream)
    sizes = chunk_sizes(samples)

    def _chunk(i, child):
        points = child.generator().uniform(-half_width, half_width, (sizes[i], dim))
        return int(np.count_nonzero(membership(points)))

    hits = sum(map_streams(_chunk, len(sizes), stream, n_workers=n_workers, silent=silent))
    fraction = wilson_estimate(hits, samples, stream.seed)
    cube = (2 * half_width) ** dim
    return (
        fraction.fraction * cube,
        (fraction.ci_low * cube, fraction.ci_high * cube),
        fraction,
    )
