import logging
from abc import ABC, abstractmethod
from typing import Literal, Optional, Union

import numpy as np

from sepvol.operators import FactorShape, HermitianOp
from sepvol.sampling import gaussian_hermitian_batch

logger = logging.getLogger(__name__)

Exactness = Literal["exact", "lower_bound"]
Probe = Union[HermitianOp, np.ndarray]


def combine_exactness(*values: Exactness) -> Exactness:
    """An expression is exact only if every term is."""
    return "exact" if all(v == "exact" for v in values) else "lower_bound"


class BodyOracle(ABC):
    """
    Convex body given by its support function ``h_K(u) = max_{x∈K} ⟨x, u⟩``.

    Subclasses implement :meth:`support_batch` on raw probe arrays and
    :meth:`gaussian_probes`, which draws standard Gaussians of the probe space.

    Parameters
    ----------
    name
        Identifier used in reports.
    ambient_dim
        Real dimension of the ambient space.
    exactness
        ``"exact"``, or ``"lower_bound"`` when support values never exceed
        the true support function.
    probe_dim
        Real dimension of the probe space (defaults to ``ambient_dim``).
    center
        The body's natural center, as a raw array. ``None`` means the origin.
    """

    def __init__(
        self,
        name: str,
        ambient_dim: int,
        exactness: Exactness = "exact",
        probe_dim: Optional[int] = None,
        center: Optional[np.ndarray] = None,
    ):
        if exactness not in ("exact", "lower_bound"):
            raise ValueError(f"exactness must be 'exact' or 'lower_bound', got {exactness!r}.")
        self.name = name
        self.ambient_dim = int(ambient_dim)
        self.exactness = exactness
        self.probe_dim = int(ambient_dim if probe_dim is None else probe_dim)
        self.center = center

    @property
    def is_exact(self) -> bool:
        return self.exactness == "exact"

    @property
    def chunk_size(self) -> int:
        """Probes evaluated per batch by Monte Carlo estimators."""
        return 2048

    @abstractmethod
    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        """Support values for a leading batch axis of raw probes."""

    @abstractmethod
    def gaussian_probes(self, size: int, rng: np.random.Generator) -> np.ndarray:
        """``size`` standard Gaussian probes of the probe space, as raw arrays."""

    def _raw(self, u: Probe) -> np.ndarray:
        return u.entries if isinstance(u, HermitianOp) else np.asarray(u)

    def support(self, u: Probe) -> float:
        """
        Evaluate the support function at a single probe.

        Parameters
        ----------
        u
            A :class:`~sepvol.operators.HermitianOp` for operator bodies, or a
            real vector for bodies in ``ℝᵐ``.
        """
        raw = self._raw(u)
        return float(self.support_batch(raw[None])[0])

    def __repr__(self) -> str:
        return f"{type(self).__name__}(name={self.name!r}, exactness={self.exactness!r})"


class OperatorBody(BodyOracle):
    """
    Body in ``(ℬ_sa(ℋ), ⟨·,·⟩_HS)``.

    Parameters
    ----------
    shape
        Factor structure of ``ℋ``.
    centered
        If True the body is translated by its center ``Id/d`` and probed in
        the trace-zero hyperplane ``𝒯₀``.
    """

    def __init__(
        self,
        name: str,
        shape: FactorShape,
        exactness: Exactness = "exact",
        centered: bool = False,
    ):
        d = shape.d
        super().__init__(
            name,
            ambient_dim=d * d,
            exactness=exactness,
            probe_dim=d * d - 1 if centered else d * d,
            center=np.eye(d) / d if centered else None,
        )
        self.shape = shape
        self.centered = centered

    def gaussian_probes(self, size: int, rng: np.random.Generator) -> np.ndarray:
        return gaussian_hermitian_batch(self.shape.d, size, rng, traceless=self.centered)

    def _raw(self, u: Probe) -> np.ndarray:
        raw = super()._raw(u)
        d = self.shape.d
        if raw.shape != (d, d):
            raise ValueError(f"Expected a {d}×{d} probe for {self.name}, got shape {raw.shape}.")
        return raw


class VectorBody(BodyOracle):
    """Body in ``ℝᵐ`` with the Euclidean inner product."""

    def __init__(self, name: str, m: int, exactness: Exactness = "exact"):
        super().__init__(name, ambient_dim=m, exactness=exactness)

    def gaussian_probes(self, size: int, rng: np.random.Generator) -> np.ndarray:
        return rng.standard_normal((size, self.ambient_dim))

    def _raw(self, u: Probe) -> np.ndarray:
        raw = np.asarray(u, dtype=float).ravel()
        if raw.shape != (self.ambient_dim,):
            raise ValueError(
                f"Expected a probe in ℝ^{self.ambient_dim} for {self.name}, got shape {raw.shape}."
            )
        return raw
