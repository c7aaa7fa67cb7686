import logging
from typing import Literal, Optional

import numpy as np

from sepvol.bodies import BodyOracle, multilinear_max
from sepvol.sampling import as_generator, as_stream, complex_gaussian

logger = logging.getLogger(__name__)

Field = Literal["real", "complex"]


class GeneralizedMatrix:
    """
    Array ``A = (a_{i₁…i_m})`` with ``m`` indices each ranging over ``1..D``.

    Parameters
    ----------
    entries
        Array of shape ``(D,)*m``.
    field
        ``"real"`` or ``"complex"``; real entries with ``field="complex"`` are
        allowed.
    """

    def __init__(self, entries: np.ndarray, field: Field = "complex"):
        if field not in ("real", "complex"):
            raise ValueError(f"field must be 'real' or 'complex', got {field!r}.")
        a = np.array(entries, dtype=float if field == "real" else np.complex128)
        if a.ndim < 1 or len(set(a.shape)) != 1:
            raise ValueError(f"All indices must share one range, got shape {a.shape}.")
        if not np.all(np.isfinite(a)):
            raise ValueError("Generalized matrix entries must be finite.")
        a.flags.writeable = False
        self.entries = a
        self.field = field

    @property
    def D(self) -> int:
        return self.entries.shape[0]

    @property
    def m(self) -> int:
        return self.entries.ndim

    @property
    def norm2(self) -> float:
        """``‖A‖₂ = (Σ|a|²)^{1/2}``."""
        return float(np.linalg.norm(self.entries.ravel()))

    @classmethod
    def random(cls, D: int, m: int, stream=None, field: Field = "complex") -> "GeneralizedMatrix":
        """Gaussian entries normalized to ``‖A‖₂ = 1``."""
        rng = as_generator(stream)
        shape = (D,) * m
        a = complex_gaussian(rng, shape) if field == "complex" else rng.standard_normal(shape)
        return cls(a / np.linalg.norm(a.ravel()), field)

    def __repr__(self) -> str:
        return f"GeneralizedMatrix(D={self.D}, m={self.m}, field={self.field!r})"


def _top_singular(a: np.ndarray) -> np.ndarray:
    return np.linalg.svd(a, compute_uv=False)[..., 0]


def injective_norm(
    A: GeneralizedMatrix,
    n_starts: Optional[int] = None,
    n_sweeps: Optional[int] = None,
    stream=None,
) -> float:
    """
    ``‖A‖_{K∘} = max |Σ a_{i₁…i_m} x¹_{i₁}…x^m_{i_m}|`` over unit vectors.

    For ``m ≤ 2`` the value is exact (Euclidean norm, top singular value).
    For ``m ≥ 3`` it is the best value of alternating maximization, a lower
    bound that never decreases with ``n_starts``.

    Parameters
    ----------
    A
        The generalized matrix.
    n_starts, n_sweeps
        Restarts and sweep cap, defaulting to ``sepvol.settings``.
    stream
        Seeds the restarts.
    """
    if A.m == 1:
        return A.norm2
    if A.m == 2:
        return float(_top_singular(A.entries))
    value, _ = multilinear_max(
        A.entries[None],
        A.D,
        A.m,
        field=A.field,
        n_starts=n_starts,
        n_sweeps=n_sweeps,
        stream=as_stream(stream),
    )
    return float(value[0])


class TensorPowerBall(BodyOracle):
    """
    ``(B₂ᴰ)^{⊗̂m}``, the projective tensor power of Euclidean balls.

    The support function is the injective norm of the probe read as an
    ``m``-index array; exact for ``m ≤ 2`` and a lower bound otherwise.

    Parameters
    ----------
    D
        Dimension of each ball.
    m
        Number of factors.
    field
        Real or complex balls. Complex probes live in ``ℂ^{Dᵐ} ≅ ℝ^{2Dᵐ}``.
    n_starts, n_sweeps, stream
        Alternating maximization parameters.
    """

    def __init__(
        self,
        D: int,
        m: int,
        field: Field = "real",
        n_starts: Optional[int] = None,
        n_sweeps: Optional[int] = None,
        stream=None,
    ):
        if m < 1 or D < 1:
            raise ValueError(f"D and m must be positive, got D={D}, m={m}.")
        dim = D**m if field == "real" else 2 * D**m
        super().__init__(
            f"(B2^{D})^{m}",
            ambient_dim=dim,
            exactness="exact" if m <= 2 else "lower_bound",
        )
        self.D, self.m, self.field = D, m, field
        self.n_starts, self.n_sweeps = n_starts, n_sweeps
        self.stream = as_stream(stream)

    @property
    def chunk_size(self) -> int:
        return int(min(2048, max(16, 2**16 // self.D**self.m)))

    def gaussian_probes(self, size, rng):
        shape = (size,) + (self.D,) * self.m
        if self.field == "real":
            return rng.standard_normal(shape)
        return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)

    def _raw(self, u):
        raw = np.asarray(u)
        if raw.size != self.D**self.m:
            raise ValueError(f"Expected {self.D ** self.m} entries, got {raw.size}.")
        return raw.reshape((self.D,) * self.m)

    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        probes = probes.reshape((-1,) + (self.D,) * self.m)
        if self.m == 1:
            return np.linalg.norm(probes, axis=-1)
        if self.m == 2:
            return _top_singular(probes)
        value, _ = multilinear_max(
            probes,
            self.D,
            self.m,
            field=self.field,
            n_starts=self.n_starts,
            n_sweeps=self.n_sweeps,
            stream=self.stream,
        )
        return value
