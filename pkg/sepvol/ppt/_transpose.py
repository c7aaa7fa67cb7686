import logging
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from sepvol._constants import TOLERANCES
from sepvol.operators import DensityMatrix, FactorShape, HermitianOp, spectrum

logger = logging.getLogger(__name__)


def _check_subsystem(shape: FactorShape, subsystem: int):
    if int(subsystem) != subsystem or not 0 <= subsystem < shape.N:
        raise ValueError(f"subsystem must be an index in [0, {shape.N}), got {subsystem}.")


def partial_transpose_batch(a: np.ndarray, shape: FactorShape, subsystem: int = 0) -> np.ndarray:
    """Partial transpose of a batch of ``d × d`` arrays, shape ``(..., d, d)``."""
    _check_subsystem(shape, subsystem)
    D, N, d = shape.D, shape.N, shape.d
    lead = a.shape[:-2]
    t = a.reshape(lead + (D,) * (2 * N))
    offset = len(lead)
    t = np.swapaxes(t, offset + subsystem, offset + N + subsystem)
    return t.reshape(lead + (d, d))


def partial_transpose(
    rho: Union[HermitianOp, DensityMatrix],
    shape: Optional[FactorShape] = None,
    subsystem: int = 0,
) -> HermitianOp:
    """
    Transpose one tensor factor: ``(Tρ)_{iα,jβ} = ρ_{jα,iβ}`` for ``subsystem = 0``.

    The map is an involution and a Hilbert-Schmidt isometry fixing ``Id/d``.

    Parameters
    ----------
    rho
        Operator on ``(ℂᴰ)^{⊗N}``.
    shape
        Factor structure used to interpret ``rho``; defaults to ``rho.shape``.
    subsystem
        Index of the transposed factor, ``0 ≤ subsystem < N``.

    Examples
    --------
    >>> shape = FactorShape(2, 2)
    >>> rho = HermitianOp.identity(shape) / 4
    >>> np.allclose(partial_transpose(rho).entries, rho.entries)
    True
    """
    op = rho.op if isinstance(rho, DensityMatrix) else rho
    shape = op.shape if shape is None else shape
    if shape.d != op.dim:
        raise ValueError(f"{shape} does not factor an operator of dimension {op.dim}.")
    return HermitianOp(partial_transpose_batch(op.entries, shape, subsystem), shape)


@dataclass(frozen=True)
class PptVerdict:
    """
    Outcome of the PPT test.

    Parameters
    ----------
    is_ppt
        ``min_eigenvalue ≥ −1e−10``.
    min_eigenvalue
        Smallest eigenvalue of the partial transpose.
    subsystem
        The transposed factor.
    """

    is_ppt: bool
    min_eigenvalue: float
    subsystem: int

    def __bool__(self) -> bool:
        return self.is_ppt


def is_ppt(
    rho: Union[DensityMatrix, HermitianOp],
    shape: Optional[FactorShape] = None,
    subsystem: int = 0,
) -> PptVerdict:
    """Whether the partial transpose of ``rho`` is positive semi-definite."""
    lam_min = float(spectrum(partial_transpose(rho, shape, subsystem))[0])
    return PptVerdict(lam_min >= -TOLERANCES.PPT, lam_min, int(subsystem))


def bell_state(D: int) -> DensityMatrix:
    """Maximally entangled ``|φ⁺⟩⟨φ⁺|`` with ``φ⁺ = Σᵢ |ii⟩/√D``."""
    phi = np.eye(D).ravel() / np.sqrt(D)
    return DensityMatrix(HermitianOp.pure_state(phi, FactorShape(D, 2)))


def werner_state(D: int, eps: float) -> DensityMatrix:
    """Isotropic state ``(1 − ε) Id/D² + ε |φ⁺⟩⟨φ⁺|``, ``0 ≤ ε ≤ 1``."""
    if not 0 <= eps <= 1:
        raise ValueError(f"eps must lie in [0, 1], got {eps}.")
    shape = FactorShape(D, 2)
    mixed = HermitianOp.identity(shape) * ((1 - eps) / D**2)
    return DensityMatrix(mixed + bell_state(D).op * eps)


def werner_ppt_threshold(D: int, tol: float = 1e-12) -> float:
    """
    Largest ``ε`` for which :func:`werner_state` is PPT, by bisection.

    The sign of the smallest eigenvalue of the partial transpose is bisected
    on ``[0, 1]``; the exact boundary is ``1/(D + 1)``.
    """
    lo, hi = 0.0, 1.0
    steps = 0
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if spectrum(partial_transpose(werner_state(D, mid)))[0] >= 0:
            lo = mid
        else:
            hi = mid
        steps += 1
    logger.debug(f"PPT boundary of the isotropic family D={D} after {steps} steps: {lo:.12f}")
    return (lo + hi) / 2
