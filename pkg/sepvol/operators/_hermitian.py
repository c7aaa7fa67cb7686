import logging
from typing import Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from sepvol._constants import TOLERANCES
from sepvol._types import ArrayLike, Number

from ._shape import FactorShape

logger = logging.getLogger(__name__)


def _as_square(entries: ArrayLike) -> np.ndarray:
    m = np.array(entries, dtype=np.complex128)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"Expected a square matrix, got array of shape {m.shape}.")
    return m


def _resolve_shape(d: int, shape: Optional[FactorShape]) -> FactorShape:
    if shape is None:
        return FactorShape.flat(d)
    if shape.d != d:
        raise ValueError(f"Factor shape {shape} has d = {shape.d}, matrix has d = {d}.")
    return shape


class HermitianOp:
    """
    Self-adjoint operator on ``ℋ`` with an attached factor structure.

    The stored matrix is symmetrized on construction, so ``entries`` equals its
    conjugate transpose exactly.

    Parameters
    ----------
    entries
        ``d × d`` complex matrix. Its Hermitian part is stored.
    shape
        Factor structure. Defaults to a single factor of dimension ``d``.
    """

    __slots__ = ("_entries", "_shape")

    def __init__(self, entries: ArrayLike, shape: Optional[FactorShape] = None):
        m = _as_square(entries)
        self._shape = _resolve_shape(m.shape[0], shape)
        h = (m + m.conj().T) / 2
        h.flags.writeable = False
        self._entries = h

    @property
    def entries(self) -> np.ndarray:
        """Read-only dense ``d × d`` matrix."""
        return self._entries

    @property
    def shape(self) -> FactorShape:
        return self._shape

    @property
    def dim(self) -> int:
        return self._shape.d

    @property
    def trace(self) -> float:
        return float(np.trace(self._entries).real)

    @property
    def hs_norm(self) -> float:
        return float(np.linalg.norm(self._entries))

    def _check_shape(self, other: "HermitianOp"):
        if self._shape != other.shape:
            raise ValueError(f"Shape mismatch: {self._shape} vs {other.shape}.")

    def __add__(self, other: "HermitianOp") -> "HermitianOp":
        self._check_shape(other)
        return HermitianOp(self._entries + other.entries, self._shape)

    def __sub__(self, other: "HermitianOp") -> "HermitianOp":
        self._check_shape(other)
        return HermitianOp(self._entries - other.entries, self._shape)

    def __neg__(self) -> "HermitianOp":
        return HermitianOp(-self._entries, self._shape)

    def __mul__(self, t: Number) -> "HermitianOp":
        if isinstance(t, complex) or np.iscomplexobj(t):
            raise TypeError("Hermitian operators form a real vector space.")
        return HermitianOp(float(t) * self._entries, self._shape)

    __rmul__ = __mul__

    def __truediv__(self, t: Number) -> "HermitianOp":
        return self * (1.0 / t)

    def __repr__(self) -> str:
        return f"HermitianOp(D={self._shape.D}, N={self._shape.N})"

    @classmethod
    def identity(cls, shape: FactorShape) -> "HermitianOp":
        return cls(np.eye(shape.d), shape)

    @classmethod
    def pure_state(
        cls, vector: ArrayLike, shape: Optional[FactorShape] = None
    ) -> "HermitianOp":
        """Projector ``|x⟩⟨x|`` onto a normalized copy of ``vector``."""
        x = np.asarray(vector, dtype=np.complex128).ravel()
        norm = np.linalg.norm(x)
        if norm == 0:
            raise ValueError("Cannot build a pure state from the zero vector.")
        x = x / norm
        return cls(np.outer(x, x.conj()), shape)


class DensityMatrix:
    """
    A state: positive semi-definite Hermitian operator of trace one.

    Parameters
    ----------
    op
        The underlying operator.
    """

    __slots__ = ("op",)

    def __init__(self, op: HermitianOp):
        tr = op.trace
        if abs(tr - 1) > TOLERANCES.TRACE:
            raise ValueError(f"Density matrix must have trace 1, got {tr!r}.")
        lam_min = spectrum(op)[0]
        if lam_min < -TOLERANCES.PSD:
            raise ValueError(
                f"Density matrix must be positive semi-definite, minimum eigenvalue {lam_min:.3e}."
            )
        self.op = op

    @property
    def shape(self) -> FactorShape:
        return self.op.shape

    @property
    def entries(self) -> np.ndarray:
        return self.op.entries

    @property
    def purity(self) -> float:
        return hs_inner(self.op, self.op)

    def __repr__(self) -> str:
        return f"DensityMatrix(D={self.shape.D}, N={self.shape.N})"


class ProductVector:
    """
    Pure tensor ``x₁ ⊗ … ⊗ x_N`` of unit vectors in ``ℂᴰ``.

    Parameters
    ----------
    factors
        ``N`` vectors of equal length ``D``, each of Euclidean norm one.
    """

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[ArrayLike]):
        vecs = tuple(np.asarray(f, dtype=np.complex128).ravel() for f in factors)
        if len(vecs) == 0:
            raise ValueError("A product vector needs at least one factor.")
        if len({v.shape[0] for v in vecs}) != 1:
            raise ValueError("All factors must live in the same ℂᴰ.")
        for k, v in enumerate(vecs):
            if abs(np.linalg.norm(v) - 1) > TOLERANCES.UNIT_NORM:
                raise ValueError(
                    f"Factor {k} has norm {np.linalg.norm(v)!r}, expected 1."
                )
            v.flags.writeable = False
        self.factors = vecs

    @property
    def shape(self) -> FactorShape:
        return FactorShape(self.factors[0].shape[0], len(self.factors))

    def ket(self) -> np.ndarray:
        out = self.factors[0]
        for v in self.factors[1:]:
            out = np.kron(out, v)
        return out

    def projector(self) -> HermitianOp:
        x = self.ket()
        return HermitianOp(np.outer(x, x.conj()), self.shape)

    def __repr__(self) -> str:
        return f"ProductVector(D={self.shape.D}, N={self.shape.N})"


def hs_inner(a: HermitianOp, b: HermitianOp) -> float:
    """
    Hilbert-Schmidt inner product ``tr(A†B)``.

    Parameters
    ----------
    a, b
        Operators of the same shape.

    Returns
    -------
    Real value of ``tr(AB)``.
    """
    if a.shape != b.shape:
        raise ValueError(f"Shape mismatch: {a.shape} vs {b.shape}.")
    return float(np.vdot(a.entries, b.entries).real)


def spectrum(a: HermitianOp) -> np.ndarray:
    """Real eigenvalues in ascending order."""
    return linalg.eigvalsh(a.entries)


def eigh(a: HermitianOp) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition under a residual contract.

    Returns
    -------
    Eigenvalues ascending, and orthonormal eigenvectors as columns.

    Raises
    ------
    ValueError
        If ``max ‖Av − λv‖`` exceeds ``1e−9 · ‖A‖_op``.
    """
    w, v = linalg.eigh(a.entries)
    scale = max(np.abs(w).max(), np.finfo(float).tiny)
    residual = np.linalg.norm(a.entries @ v - v * w, axis=0).max()
    if residual > TOLERANCES.EIG_RESIDUAL * scale:
        raise ValueError(
            f"Eigensolver residual {residual:.3e} above tolerance for ‖A‖_op = {scale:.3e}."
        )
    return w, v


def trace_norm(a: HermitianOp) -> float:
    """Sum of absolute eigenvalues; ``a ∈ Δ`` iff this is at most one."""
    return float(np.abs(spectrum(a)).sum())


def operator_norm(a: HermitianOp) -> float:
    """Largest absolute eigenvalue."""
    w = spectrum(a)
    return float(max(abs(w[0]), abs(w[-1])))


def tensor(a: HermitianOp, b: HermitianOp) -> HermitianOp:
    """Kronecker product with concatenated factor shape."""
    return HermitianOp(np.kron(a.entries, b.entries), a.shape.tensor(b.shape))


def hermitian_part(
    a: ArrayLike, shape: Optional[FactorShape] = None
) -> HermitianOp:
    """
    Orthogonal projection ``π(A) = (A + A†)/2`` onto the self-adjoint operators.

    Parameters
    ----------
    a
        Arbitrary square complex matrix, or a :class:`HermitianOp`.
    shape
        Factor structure for the result.
    """
    if isinstance(a, HermitianOp):
        return a if shape is None or shape == a.shape else HermitianOp(a.entries, shape)
    return HermitianOp(a, shape)
