import logging
from typing import Literal, Optional

import numpy as np
from scipy.optimize import minimize_scalar

from sepvol.bodies import OperatorBody, symmetric_polytope
from sepvol.ellipsoids import phi_map
from sepvol.operators import FactorShape, to_coordinates
from sepvol.sampling import as_stream, gaussian_hermitian_batch, product_kets
from sepvol.utils import CheckRecord
from sepvol.widths import gaussian_width_mc, log_gamma_n, polytope_width_bound

from ._net import SphereNet

logger = logging.getLogger(__name__)

Ellipsoid = Literal["hs_ball", "lowner"]

# largest δ for which (1 − 2δ² + δ⁴/2) > 0
DELTA_MAX = float(np.sqrt(2 - np.sqrt(2)))
# vertex sign classes enumerated by NetPolytope.support_batch
MAX_ENUMERATED = 2**16


def sandwich_factor(delta: float) -> float:
    """``1 − 2δ² + δ⁴/2``, the scaling with ``(1 − 2δ² + δ⁴/2) Δ ⊂ P(𝒩)``."""
    return float(1 - 2 * delta**2 + delta**4 / 2)


def _check_delta(delta: float):
    if not 0 < delta < DELTA_MAX:
        raise ValueError(f"delta must lie in (0, √(2−√2)) = (0, {DELTA_MAX:.4f}), got {delta}.")


class NetPolytope(OperatorBody):
    """
    The polytope ``P(𝒩) = conv{±|x⟩⟨x| : x ∈ 𝒩}`` and its tensor powers.

    The ``N``-th power has ``(#𝒩)ᴺ`` vertex sign classes
    ``±|x₁⟩⟨x₁| ⊗ … ⊗ |x_N⟩⟨x_N|``, never materialized for large ``N``.

    Parameters
    ----------
    net
        Net of the sphere of ``ℂᴰ``, i.e. of real dimension ``2D``.
    N
        Tensor power.
    """

    def __init__(self, net: SphereNet, N: int = 1):
        shape = FactorShape(net.D, N)
        super().__init__(f"P_net^{N}", shape, exactness="exact")
        self.net = net
        self.N = N
        self._kets = net.complex_points()

    @property
    def n_sign_classes(self) -> int:
        return len(self.net) ** self.N

    def sandwich_constant(self, N: Optional[int] = None) -> float:
        """``(1 − 2δ² + δ⁴/2)ᴺ``, the factor with ``c Σ ⊂ P(𝒩)^{⊗N}``."""
        return sandwich_factor(self.net.delta) ** (self.N if N is None else N)

    def vertex_kets(self, index: np.ndarray) -> np.ndarray:
        """Product kets for an integer index array of shape ``(size, N)``."""
        return product_kets(self._kets[index])

    def sample_vertices(self, size: int, stream=None) -> np.ndarray:
        """Uniformly drawn signed vertices, shape ``(size, d, d)``."""
        rng = as_stream(stream).generator()
        index = rng.integers(len(self.net), size=(size, self.N))
        signs = rng.choice([-1.0, 1.0], size=size)
        kets = self.vertex_kets(index)
        return signs[:, None, None] * (kets[:, :, None] * kets[:, None, :].conj())

    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        """``max |⟨y|u|y⟩|`` over all product kets of net points."""
        if self.n_sign_classes > MAX_ENUMERATED:
            raise ValueError(
                f"{self.n_sign_classes} vertex classes exceed the enumeration cap {MAX_ENUMERATED}."
            )
        index = np.indices((len(self.net),) * self.N).reshape(self.N, -1).T
        kets = self.vertex_kets(index)
        step = max(1, 2**22 // len(kets))
        out = []
        for start in range(0, len(probes), step):
            block = probes[start : start + step]
            values = np.einsum("ki,bij,kj->bk", kets.conj(), block, kets).real
            out.append(np.abs(values).max(axis=-1))
        return np.concatenate(out)


def lemma3_sandwich_check(net: SphereNet, probes: int = 1000, stream=None) -> CheckRecord:
    """
    Check ``(1 − 2δ² + δ⁴/2) Δ(ℂᴰ) ⊂ P(𝒩) ⊂ Δ(ℂᴰ)`` through the dual norms.

    For random Hermitian ``A`` the ratio ``max_{y∈𝒩} |⟨y|A|y⟩| / ‖A‖_op`` must
    lie in ``[1 − 2δ² + δ⁴/2, 1]``.

    Parameters
    ----------
    net
        Net of the sphere of ``ℂᴰ`` with ``δ < √(2−√2)``.
    probes
        Number of Gaussian Hermitian probes.
    stream
        Seeds the probes.
    """
    _check_delta(net.delta)
    polytope = NetPolytope(net)
    rng = as_stream(stream).generator()
    a = gaussian_hermitian_batch(net.D, probes, rng)
    op = np.abs(np.linalg.eigvalsh(a)).max(axis=-1)
    ratios = polytope.support_batch(a) / op
    constant = sandwich_factor(net.delta)
    worst, best = float(ratios.min()), float(ratios.max())
    logger.info(f"Net sandwich D={net.D}, delta={net.delta}: worst ratio {worst:.4f} ≥ {constant:.4f}?")
    return CheckRecord(
        worst_ratio=worst,
        best_ratio=best,
        constant=constant,
        net_size=len(net),
        probes=probes,
        passed=bool(worst >= constant and best <= 1 + 1e-12),
    )


def default_delta(N: int) -> Optional[float]:
    """``1/√(N ln 2N)``, or ``None`` when it falls outside ``(0, √(2−√2))``."""
    if N < 2:
        return None
    delta = 1 / np.sqrt(N * np.log(2 * N))
    return float(delta) if delta < DELTA_MAX else None


def _log_width_upper(shape: FactorShape, delta: float, ellipsoid: Ellipsoid) -> float:
    D, N, d = shape.D, shape.N, shape.d
    log_value = (
        0.5 * np.log(4 * D * N * np.log1p(2 / delta))
        - log_gamma_n(d * d)
        - N * np.log(sandwich_factor(delta))
    )
    if ellipsoid == "lowner":
        log_value += phi_map(D).log_det_power(N) / (d * d)
    elif ellipsoid != "hs_ball":
        raise ValueError(f"ellipsoid must be 'hs_ball' or 'lowner', got {ellipsoid!r}.")
    return float(log_value)


def sigma_width_upper(shape: FactorShape, delta: float, ellipsoid: Ellipsoid = "hs_ball") -> float:
    """
    Upper bound on ``vrad(Σ)`` (and on ``w(Σ)``) from the tensor-power net polytope.

    With ``hs_ball`` the bound is
    ``√(2 ln (1 + 2/δ)^{2DN}) / (γ_{d²} (1 − 2δ² + δ⁴/2)ᴺ)``, using that the
    vertices of the polytope have Hilbert-Schmidt norm 1. With ``lowner`` the
    same bound is applied to ``Ψ⁻¹(Σ)``, whose polytope vertices have norm 1
    in the Löwner geometry, and rescaled by ``det(Ψ)^{1/d²} = d^{−α_D}``.

    Parameters
    ----------
    shape
        Factor structure of ``ℋ``.
    delta
        Net radius, ``0 < delta < √(2−√2)``.
    ellipsoid
        Reference ellipsoid, ``"hs_ball"`` or ``"lowner"``.
    """
    _check_delta(delta)
    return float(np.exp(_log_width_upper(shape, delta, ellipsoid)))


def sigma_width_upper_report(
    shape: FactorShape, delta: Optional[float] = None, ellipsoid: Ellipsoid = "hs_ball"
) -> CheckRecord:
    """
    :func:`sigma_width_upper` at ``delta``, at the default ``δ = 1/√(N ln 2N)``, and at the optimal ``δ``.

    ``bound`` is the smallest of the three.
    """
    res = minimize_scalar(
        lambda t: _log_width_upper(shape, t, ellipsoid),
        bounds=(1e-6, DELTA_MAX - 1e-9),
        method="bounded",
        options={"xatol": 1e-10},
    )
    record = CheckRecord(
        ellipsoid=ellipsoid,
        delta=delta,
        at_delta=None if delta is None else sigma_width_upper(shape, delta, ellipsoid),
        default_delta=default_delta(shape.N),
        at_default_delta=None,
        optimal_delta=float(res.x),
        at_optimal_delta=float(np.exp(res.fun)),
    )
    if record.default_delta is not None:
        record.at_default_delta = sigma_width_upper(shape, record.default_delta, ellipsoid)
    candidates = [record.at_delta, record.at_default_delta, record.at_optimal_delta]
    record.bound = min(v for v in candidates if v is not None)
    return record


def sampled_polytope_width_check(
    polytope: NetPolytope, n_vertices: int = 256, samples: int = 2000, stream=None
) -> CheckRecord:
    """
    One-sided check ``w_G ≤ √(2 ln v)`` on the hull of sampled vertex pairs.

    The sampled hull lives in ``ℝ^{d²}`` through :func:`~sepvol.operators.to_coordinates`;
    its vertices have norm 1. The estimate passes when its lower 3σ bound does
    not exceed the polytope bound.
    """
    stream = as_stream(stream)
    vertices = to_coordinates(polytope.sample_vertices(n_vertices, stream.child(0)))
    body = symmetric_polytope(vertices, name=f"sampled {polytope.name}")
    width = gaussian_width_mc(body, samples, stream.child(1))
    m = vertices.shape[1]
    bound = polytope_width_bound(n_vertices, m) * float(np.exp(log_gamma_n(m)))
    return CheckRecord(
        width=width,
        bound=bound,
        passed=bool(width.lower(3.0) <= bound),
    )
