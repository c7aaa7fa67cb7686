import logging
from dataclasses import dataclass

import numpy as np

from sepvol.bodies import OperatorBody
from sepvol.operators import (
    FactorShape,
    HermitianOp,
    factorwise_map,
    hs_basis,
    hs_inner,
)
from sepvol.utils import CheckRecord

logger = logging.getLogger(__name__)


def alpha_D(D: int) -> float:
    """
    Exponent gain ``α_D = ½ log_D(1 + 1/D) − (1/(2D²)) log_D(D + 1)``.

    Examples
    --------
    >>> round(alpha_D(2), 3)
    0.094
    """
    if D < 2:
        raise ValueError(f"alpha_D needs D ≥ 2, got {D}.")
    log_D = np.log(D)
    return float(0.5 * np.log1p(1 / D) / log_D - np.log(D + 1) / (2 * D * D * log_D))


@dataclass(frozen=True)
class PhiMap:
    """
    ``Φ`` on ``ℬ_sa(ℂᴰ)``: ``Φ(A) = (1 + 1/D)^{−1/2} A`` on trace-zero ``A``,
    ``Φ(Id) = √D Id``. Applied to operators on ``(ℂᴰ)^{⊗N}`` it acts as
    ``Ψ = Φ^{⊗N}``.
    """

    D: int

    @property
    def scale(self) -> float:
        """Eigenvalue on the trace-zero subspace."""
        return float((1 + 1 / self.D) ** -0.5)

    def __call__(self, a: HermitianOp) -> HermitianOp:
        self._check(a)
        s = self.scale
        return factorwise_map(a, s, np.sqrt(self.D) - s)

    def inverse(self, a: HermitianOp) -> HermitianOp:
        self._check(a)
        s = self.scale
        return factorwise_map(a, 1 / s, 1 / np.sqrt(self.D) - 1 / s)

    def _check(self, a: HermitianOp):
        if a.shape.D != self.D:
            raise ValueError(f"Φ acts on factors of dimension {self.D}, got {a.shape.D}.")

    @property
    def log_det(self) -> float:
        """``ln det Φ = ½ [ln D + (1 − D²) ln(1 + 1/D)]``."""
        D = self.D
        return float(0.5 * (np.log(D) + (1 - D * D) * np.log1p(1 / D)))

    def log_det_power(self, N: int) -> float:
        """``ln det Φ^{⊗N} = N D^{2N−2} ln det Φ``."""
        return float(N * self.D ** (2 * N - 2) * self.log_det)


def phi_map(D: int) -> PhiMap:
    """The map ``Φ`` carrying the HS unit ball onto the Löwner ellipsoid of ``Δ(ℂᴰ)``."""
    if D < 1:
        raise ValueError(f"D must be positive, got {D}.")
    return PhiMap(int(D))


@dataclass(frozen=True)
class LownerForm:
    """
    Scalar product of the Löwner ellipsoid of ``Δ(ℂᴰ)`` and its tensor powers.

    On one factor ``⟨A, B⟩_Löw = (1 + 1/D) tr(AB) − (1/D) tr(A) tr(B)``; on
    ``N`` factors it is the product form, i.e. ``⟨Ψ⁻¹A, Ψ⁻¹B⟩_HS``.

    Parameters
    ----------
    D
        Local dimension.
    N
        Tensor power.
    """

    D: int
    N: int = 1

    def __post_init__(self):
        if self.D < 2 or self.N < 1:
            raise ValueError(f"LownerForm needs D ≥ 2 and N ≥ 1, got D={self.D}, N={self.N}.")

    @property
    def alpha(self) -> float:
        return 1 + 1 / self.D

    @property
    def beta(self) -> float:
        return -1 / self.D

    @property
    def shape(self) -> FactorShape:
        return FactorShape(self.D, self.N)

    @property
    def phi(self) -> PhiMap:
        return phi_map(self.D)

    def norm(self, a: HermitianOp) -> float:
        return float(np.sqrt(lowner_inner(self, a, a)))

    def support(self, u: HermitianOp) -> float:
        """Support function of the ellipsoid, ``‖Ψ(u)‖_HS``."""
        self._check(u)
        return self.phi(u).hs_norm

    def _check(self, a: HermitianOp):
        if a.shape != self.shape:
            raise ValueError(f"Form on {self.shape} cannot evaluate an operator on {a.shape}.")


def lowner_inner(form: LownerForm, a: HermitianOp, b: HermitianOp) -> float:
    """
    ``⟨a, b⟩_Löw``.

    For ``N = 1`` the closed formula is evaluated directly; for ``N > 1`` the
    inverse of ``Ψ`` is applied factor-wise and the HS product taken.
    """
    form._check(a)
    form._check(b)
    if form.N == 1:
        return float(form.alpha * hs_inner(a, b) + form.beta * a.trace * b.trace)
    phi = form.phi
    return hs_inner(phi.inverse(a), phi.inverse(b))


def form_matrix(form: LownerForm) -> np.ndarray:
    """Gram matrix of the form in :func:`~sepvol.operators.hs_basis`."""
    basis = hs_basis(form.shape)
    images = [form.phi.inverse(b) if form.N > 1 else b for b in basis]
    if form.N > 1:
        return np.array([[hs_inner(x, y) for y in images] for x in images])
    return np.array([[lowner_inner(form, x, y) for y in basis] for x in basis])


def psi_determinant_identity(D: int, N: int) -> CheckRecord:
    """
    Compare ``ln det Ψ = N D^{2N−2} ln det Φ`` with ``−α_D d² ln d``.

    Returns
    -------
    :class:`~sepvol.utils.CheckRecord` with both sides and their relative gap.
    """
    d = D**N
    lhs = phi_map(D).log_det_power(N)
    rhs = -alpha_D(D) * d * d * np.log(d)
    rel = abs(lhs - rhs) / max(abs(rhs), np.finfo(float).tiny)
    return CheckRecord(
        log_det_psi=float(lhs),
        minus_alpha_d2_log_d=float(rhs),
        relative_gap=float(rel),
        passed=bool(rel <= 1e-12),
    )


def lowner_exponent_identity(D: int, N: int) -> CheckRecord:
    """``ln d^{1/2+α_D}`` against ``ln ((D+1)^{1−1/D²})^{N/2}``."""
    lhs = (0.5 + alpha_D(D)) * N * np.log(D)
    rhs = 0.5 * N * (1 - 1 / D**2) * np.log(D + 1)
    rel = abs(lhs - rhs) / abs(rhs)
    return CheckRecord(
        log_lhs=float(lhs), log_rhs=float(rhs), relative_gap=float(rel), passed=bool(rel <= 1e-12)
    )


class _LownerEllipsoid(OperatorBody):
    def __init__(self, form: LownerForm):
        super().__init__(f"Low({form.D},{form.N})", form.shape, exactness="exact")
        self.form = form

    def support_batch(self, probes: np.ndarray) -> np.ndarray:
        shape = self.form.shape
        phi = self.form.phi
        return np.array([phi(HermitianOp(p, shape)).hs_norm for p in probes])


def oracle_lowner(shape: FactorShape) -> OperatorBody:
    """Support-function oracle of ``Ψ(B_HS)``, the Löwner ellipsoid of ``Σ``."""
    return _LownerEllipsoid(LownerForm(shape.D, shape.N))


def lowner_inradius(shape: FactorShape) -> float:
    """
    Hilbert-Schmidt inradius of ``Σ`` certified by its Löwner ellipsoid.

    ``Σ ⊃ Löw(Σ)/d`` and ``Löw(Σ) = Ψ(B_HS)`` contains the ball of radius
    ``(1 + 1/D)^{−N/2}``, giving ``(D(D + 1))^{−N/2}``.
    """
    return float((shape.D * (shape.D + 1)) ** (-shape.N / 2))
