import logging
import warnings
from dataclasses import dataclass
from typing import Tuple

import numpy as np

from sepvol.sampling import as_stream, haar_vectors

from ._generalized import GeneralizedMatrix

logger = logging.getLogger(__name__)

SLICE_SLACK = 0.05
MAX_TRIALS = 100_000


def _slice_values(entries: np.ndarray, witnesses: np.ndarray) -> np.ndarray:
    """
    Contract modes ``2..m`` of ``entries`` with a batch of witnesses.

    ``witnesses`` has shape ``(T, m − 1, D)``; returns ``Y`` of shape ``(T, D)``.
    """
    y = np.broadcast_to(entries, (witnesses.shape[0],) + entries.shape)
    for j in range(witnesses.shape[1] - 1, -1, -1):
        y = np.einsum("t...i,ti->t...", y, witnesses[:, j, :])
    return y


@dataclass(frozen=True)
class SliceCertificate:
    """
    Certified lower bound ``‖Y‖ ≤ ‖A‖_{K∘}`` from fixed slice vectors.

    ``Y_k = Σ a_{k i₂…i_m} x²_{i₂}…x^m_{i_m}``; taking ``x¹ = conj(Y)/‖Y‖``
    shows ``‖A‖_{K∘} ≥ ‖Y‖``.

    Parameters
    ----------
    witnesses
        Unit vectors ``x², …, x^m``, shape ``(m − 1, D)``.
    slice_values
        ``Y``, shape ``(D,)``.
    bound
        ``‖Y‖``.
    trials
        Number of witness sets drawn.
    mean_mass, mass_std_error
        Mean of ``Σ|Y_k|²`` over the first batch of trials and its standard error.
    target
        ``‖A‖₂/D^{(m−1)/2}``, the averaging guarantee.
    """

    witnesses: np.ndarray
    slice_values: np.ndarray
    bound: float
    trials: int
    mean_mass: float
    mass_std_error: float
    target: float

    def recompute(self, A: GeneralizedMatrix) -> Tuple[np.ndarray, float]:
        """Recompute ``Y`` and ``‖Y‖`` from the stored witnesses."""
        y = _slice_values(A.entries, self.witnesses[None])[0]
        return y, float(np.linalg.norm(y))

    @property
    def reached_target(self) -> bool:
        return self.bound**2 >= (1 - SLICE_SLACK) * self.target**2


def slice_lower_bound(
    A: GeneralizedMatrix,
    n_trials: int = 10_000,
    stream=None,
    slack: float = SLICE_SLACK,
    max_trials: int = MAX_TRIALS,
) -> SliceCertificate:
    """
    Randomized inradius certificate for ``(B₂ᴰ)^{⊗̂m}``.

    Draws ``n_trials`` witness sets uniformly on the sphere, keeps the one with
    the largest slice mass, and keeps drawing batches of ``n_trials`` until
    ``Σ|Y_k|² ≥ (1 − slack)·‖A‖₂²/D^{m−1}`` or ``max_trials`` is reached.

    Parameters
    ----------
    A
        Generalized matrix with ``m ≥ 2``.
    n_trials
        Witness sets per batch. The first batch also provides the mean mass.
    stream
        Batch ``i`` is drawn from ``stream.child(i)``.
    slack
        Relative slack of the retry target.
    max_trials
        Cap on the total number of witness sets.

    Returns
    -------
    The best :class:`SliceCertificate`; its bound is recomputed from the stored
    witnesses.
    """
    if A.m < 2:
        raise ValueError(f"Slice certificates need m ≥ 2, got m = {A.m}.")
    if n_trials < 2:
        raise ValueError(f"n_trials must be at least 2, got {n_trials}.")
    stream = as_stream(stream)
    D, m = A.D, A.m
    target = A.norm2 / D ** ((m - 1) / 2)
    goal = (1 - slack) * target**2

    best_mass, best_witness = -np.inf, None
    mean_mass = mass_se = np.nan
    trials, batch = 0, 0
    while trials < max_trials:
        size = min(n_trials, max_trials - trials)
        rng = stream.child(batch).generator()
        witnesses = haar_vectors(D, size * (m - 1), rng, A.field).reshape(size, m - 1, D)
        mass = (np.abs(_slice_values(A.entries, witnesses)) ** 2).sum(axis=-1)
        if batch == 0:
            mean_mass = float(mass.mean())
            mass_se = float(mass.std(ddof=1) / np.sqrt(size))
        k = int(np.argmax(mass))
        if mass[k] > best_mass:
            best_mass, best_witness = float(mass[k]), witnesses[k]
        trials += size
        batch += 1
        if best_mass >= goal:
            break
    else:
        warnings.warn(
            f"Slice certificate stopped at the cap of {max_trials} trials with "
            f"mass {best_mass:.4g} below the target {goal:.4g}.",
            RuntimeWarning,
        )
    logger.debug(f"Slice certificate after {trials} trials: mass {best_mass:.6g}.")

    y = _slice_values(A.entries, best_witness[None])[0]
    return SliceCertificate(
        witnesses=best_witness,
        slice_values=y,
        bound=float(np.linalg.norm(y)),
        trials=trials,
        mean_mass=mean_mass,
        mass_std_error=mass_se,
        target=float(target),
    )
