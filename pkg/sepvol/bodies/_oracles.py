import logging
from typing import Callable, Optional

import numpy as np

from sepvol.operators import FactorShape
from sepvol.sampling import SeededStream, as_stream

from ._alternating import bilinear_product_max, hermitian_product_max
from ._base import BodyOracle, OperatorBody, VectorBody, combine_exactness

logger = logging.getLogger(__name__)


def _eigvalsh(probes: np.ndarray) -> np.ndarray:
    return np.linalg.eigvalsh(probes)


class _StateBody(OperatorBody):
    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        lam_max = _eigvalsh(probes)[:, -1]
        if self.centered:
            tr = np.trace(probes, axis1=-2, axis2=-1).real
            return lam_max - tr / self.shape.d
        return lam_max


class _TraceNormBall(OperatorBody):
    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        return np.abs(_eigvalsh(probes)).max(axis=-1)


class _SeparableBall(OperatorBody):
    def __init__(self, shape, n_starts, n_sweeps, stream):
        exactness = "exact" if shape.N == 1 else "lower_bound"
        super().__init__("Sigma", shape, exactness=exactness)
        self.n_starts = n_starts
        self.n_sweeps = n_sweeps
        self.stream = stream

    @property
    def chunk_size(self) -> int:
        return int(min(2048, max(8, 2**15 // self.shape.d**2)))

    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        if self.shape.N == 1:
            return np.abs(_eigvalsh(probes)).max(axis=-1)
        value, _ = hermitian_product_max(
            probes,
            self.shape.D,
            self.shape.N,
            n_starts=self.n_starts,
            n_sweeps=self.n_sweeps,
            stream=self.stream,
        )
        return value

    def witness(self, u) -> np.ndarray:
        """Maximizing product factors, shape ``(N, D)``."""
        _, factors = hermitian_product_max(
            self._raw(u)[None],
            self.shape.D,
            self.shape.N,
            n_starts=self.n_starts,
            n_sweeps=self.n_sweeps,
            stream=self.stream,
        )
        return factors[0]


class _RankOneProductBall(BodyOracle):
    """``Γ(ℋ)`` in ``ℬ(ℋ)`` with the real inner product ``Re tr(A†B)``."""

    def __init__(self, shape, n_starts, n_sweeps, stream):
        d = shape.d
        super().__init__("Gamma", ambient_dim=2 * d * d, exactness="lower_bound")
        self.shape = shape
        self.n_starts = n_starts
        self.n_sweeps = n_sweeps
        self.stream = stream
        if shape.N == 1:
            self.exactness = "exact"

    @property
    def chunk_size(self) -> int:
        return int(min(2048, max(8, 2**15 // self.shape.d**2)))

    def gaussian_probes(self, size: int, rng: np.random.Generator) -> np.ndarray:
        d = self.shape.d
        return rng.standard_normal((size, d, d)) + 1j * rng.standard_normal((size, d, d))

    def _raw(self, u) -> np.ndarray:
        raw = np.asarray(getattr(u, "entries", u), dtype=np.complex128)
        d = self.shape.d
        if raw.shape != (d, d):
            raise ValueError(f"Expected a {d}×{d} probe for Gamma, got shape {raw.shape}.")
        return raw

    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        if self.shape.N == 1:
            return np.linalg.svd(probes, compute_uv=False)[:, 0]
        value, _, _ = bilinear_product_max(
            probes,
            self.shape.D,
            self.shape.N,
            n_starts=self.n_starts,
            n_sweeps=self.n_sweeps,
            stream=self.stream,
        )
        return value


class _MinkowskiDifference(BodyOracle):
    def __init__(self, a: BodyOracle, b: BodyOracle):
        if a.ambient_dim != b.ambient_dim or a.probe_dim != b.probe_dim:
            raise ValueError(
                f"Cannot subtract {b.name} (dim {b.ambient_dim}) from {a.name} (dim {a.ambient_dim})."
            )
        center = None
        if a.center is not None or b.center is not None:
            ca = 0 if a.center is None else a.center
            cb = 0 if b.center is None else b.center
            center = ca - cb
        super().__init__(
            f"{a.name} - {b.name}",
            ambient_dim=a.ambient_dim,
            exactness=combine_exactness(a.exactness, b.exactness),
            probe_dim=a.probe_dim,
            center=center,
        )
        self.a, self.b = a, b

    @property
    def chunk_size(self) -> int:
        return min(self.a.chunk_size, self.b.chunk_size)

    def gaussian_probes(self, size, rng):
        return self.a.gaussian_probes(size, rng)

    def _raw(self, u):
        return self.a._raw(u)

    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        return self.a.support_batch(probes) + self.b.support_batch(-probes)


class _LinearImage(BodyOracle):
    def __init__(self, body: BodyOracle, adjoint: Callable[[np.ndarray], np.ndarray], name):
        super().__init__(
            name,
            ambient_dim=body.ambient_dim,
            exactness=body.exactness,
            probe_dim=body.probe_dim,
            center=body.center,
        )
        self.body = body
        self.adjoint = adjoint

    @property
    def chunk_size(self) -> int:
        return self.body.chunk_size

    def gaussian_probes(self, size, rng):
        return self.body.gaussian_probes(size, rng)

    def _raw(self, u):
        return self.body._raw(u)

    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        return self.body.support_batch(self.adjoint(probes))


class _EuclideanBall(VectorBody):
    def __init__(self, m: int, radius: float):
        super().__init__(f"B2^{m}", m)
        self.radius = float(radius)

    def support_batch(self, probes):
        return self.radius * np.linalg.norm(probes, axis=-1)


class _SymmetricPolytope(VectorBody):
    def __init__(self, vertices: np.ndarray, name: str):
        vertices = np.atleast_2d(np.asarray(vertices, dtype=float))
        super().__init__(name, vertices.shape[1])
        self.vertices = vertices

    def support_batch(self, probes):
        return np.abs(probes @ self.vertices.T).max(axis=-1)


def oracle_D(shape: FactorShape, centered: bool = False) -> BodyOracle:
    """
    The state space ``𝒟``.

    Parameters
    ----------
    shape
        Factor structure of ``ℋ``.
    centered
        Evaluate about ``Id/d`` with probes in the trace-zero hyperplane, so
        ``support(u) = λ_max(u) − tr(u)/d``. Otherwise ``support(u) = λ_max(u)``.
    """
    return _StateBody("D", shape, exactness="exact", centered=centered)


def oracle_Delta(shape: FactorShape) -> BodyOracle:
    """Trace-norm unit ball ``Δ = conv(𝒟 ∪ −𝒟)``; ``support(u) = ‖u‖_op``."""
    return _TraceNormBall("Delta", shape, exactness="exact")


def oracle_Sigma(
    shape: FactorShape,
    n_starts: Optional[int] = None,
    n_sweeps: Optional[int] = None,
    stream: Optional[SeededStream] = None,
) -> BodyOracle:
    """
    Symmetrized separable states ``Σ = conv(𝒮 ∪ −𝒮)``.

    Support values come from alternating eigen-maximization over product
    vectors with ``n_starts`` restarts of at most ``n_sweeps`` sweeps, and are
    lower bounds of the true support function; for ``N = 1`` the oracle is
    exact. Restarts are drawn from child streams of ``stream``, so values are
    deterministic and non-decreasing in ``n_starts``.

    Parameters
    ----------
    shape
        Factor structure of ``ℋ``.
    n_starts
        Random restarts. Defaults to ``sepvol.settings.n_starts``.
    n_sweeps
        Sweep cap per restart. Defaults to ``sepvol.settings.n_sweeps``.
    stream
        Seeds the restarts. Defaults to ``sepvol.settings.seed``.
    """
    return _SeparableBall(shape, n_starts, n_sweeps, as_stream(stream))


def oracle_Gamma_ball(
    shape: FactorShape,
    n_starts: Optional[int] = None,
    n_sweeps: Optional[int] = None,
    stream: Optional[SeededStream] = None,
) -> BodyOracle:
    """
    ``Γ(ℋ)``, the convex hull of rank-one product operators ``|x⟩⟨y|``.

    Probes are arbitrary complex ``d × d`` matrices; ``support(u)`` is the best
    ``Re⟨y|u|x⟩`` found by pairwise singular-vector updates (exact for ``N = 1``).
    """
    return _RankOneProductBall(shape, n_starts, n_sweeps, as_stream(stream))


def oracle_minkowski_diff(a: BodyOracle, b: BodyOracle) -> BodyOracle:
    """
    ``K − L`` with ``h_{K−L}(u) = h_K(u) + h_L(−u)``.

    The result is exact only when both operands are.
    """
    return _MinkowskiDifference(a, b)


def oracle_image(
    body: BodyOracle,
    adjoint: Callable[[np.ndarray], np.ndarray],
    name: Optional[str] = None,
) -> BodyOracle:
    """
    Linear image ``L(K)`` with ``h_{L(K)}(u) = h_K(L*u)``.

    Parameters
    ----------
    body
        The body ``K``.
    adjoint
        ``L*`` acting on a leading batch axis of raw probes.
    name
        Identifier, defaults to ``"L(<body>)"``.
    """
    return _LinearImage(body, adjoint, name or f"L({body.name})")


def euclidean_ball(m: int, radius: float = 1.0) -> BodyOracle:
    """Euclidean ball of ``ℝᵐ``."""
    return _EuclideanBall(m, radius)


def segment(u: np.ndarray) -> BodyOracle:
    """``conv{±u}``."""
    return _SymmetricPolytope(np.asarray(u, dtype=float)[None], "segment")


def symmetric_polytope(vertices: np.ndarray, name: str = "polytope") -> BodyOracle:
    """``conv{±x_i}`` for the rows ``x_i`` of ``vertices``."""
    return _SymmetricPolytope(vertices, name)
