"""Batched alternating maximization over products of unit vectors."""
import logging
from typing import List, Literal, Optional, Tuple

import numpy as np

from sepvol import settings
from sepvol.sampling import SeededStream, as_stream, haar_vectors

logger = logging.getLogger(__name__)

# subscripts for einsum; "z" (batch) and "s" (restart) are reserved
_LETTERS = "abcdefghijklmnopqrtuvwxyABCDEFGHIJKLMNOPQRSTUVWXYZ"


def _resolve(
    n_starts: Optional[int], n_sweeps: Optional[int], tol: Optional[float]
) -> Tuple[int, int, float]:
    n_starts = settings.n_starts if n_starts is None else int(n_starts)
    n_sweeps = settings.n_sweeps if n_sweeps is None else int(n_sweeps)
    tol = settings.sweep_tol if tol is None else float(tol)
    if n_starts < 1 or n_sweeps < 1:
        raise ValueError(
            f"n_starts and n_sweeps must be positive, got {n_starts} and {n_sweeps}."
        )
    return n_starts, n_sweeps, tol


def initial_factors(
    batch: int,
    n_modes: int,
    D: int,
    n_starts: int,
    stream: SeededStream,
    field: Literal["real", "complex"] = "complex",
) -> np.ndarray:
    """
    Random unit starting vectors, shape ``(batch, n_starts, n_modes, D)``.

    Restart ``i`` is drawn from ``stream.child(i)``, so the first ``k`` restarts
    are identical for every ``n_starts ≥ k``.
    """
    starts = []
    for i in range(n_starts):
        rng = stream.child(i).generator()
        starts.append(haar_vectors(D, batch * n_modes, rng, field).reshape(batch, n_modes, D))
    return np.stack(starts, axis=1)


def _reduce_operator(
    t: np.ndarray, ys: np.ndarray, xs: np.ndarray, k: int, N: int
) -> np.ndarray:
    """
    Contract every factor but ``k`` of an operator tensor.

    ``t`` has shape ``(B,) + (D,)*2N`` (row axes then column axes); rows are
    contracted with ``conj(y_j)``, columns with ``x_j``. Returns the
    ``(B, S, D, D)`` block acting on factor ``k``.
    """
    if N == 1:
        B, S = xs.shape[:2]
        return np.array(np.broadcast_to(t[:, None], (B, S) + t.shape[1:]))
    rows, cols = _LETTERS[:N], _LETTERS[N : 2 * N]
    subs: List[str] = ["z" + rows + cols]
    operands: List[np.ndarray] = [t]
    for j in range(N):
        if j == k:
            continue
        subs += ["zs" + rows[j], "zs" + cols[j]]
        operands += [ys[:, :, j, :].conj(), xs[:, :, j, :]]
    expr = ",".join(subs) + "->zs" + rows[k] + cols[k]
    return np.einsum(expr, *operands, optimize="greedy")


def _contract_tensor(t: np.ndarray, xs: np.ndarray, k: int, m: int) -> np.ndarray:
    """Contract every mode but ``k`` of ``t`` (shape ``(B,) + (D,)*m``) with ``xs``."""
    modes = _LETTERS[:m]
    subs: List[str] = ["z" + modes]
    operands: List[np.ndarray] = [t]
    for j in range(m):
        if j == k:
            continue
        subs.append("zs" + modes[j])
        operands.append(xs[:, :, j, :])
    expr = ",".join(subs) + "->zs" + modes[k]
    return np.einsum(expr, *operands, optimize="greedy")


def _converged(value: np.ndarray, previous: np.ndarray, tol: float) -> bool:
    return bool(np.all(value - previous < tol))


def hermitian_product_max(
    u: np.ndarray,
    D: int,
    N: int,
    n_starts: Optional[int] = None,
    n_sweeps: Optional[int] = None,
    stream=None,
    tol: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Maximize ``|⟨x₁⊗…⊗x_N| u |x₁⊗…⊗x_N⟩|`` over unit factors.

    Each restart runs twice, once on ``u`` and once on ``−u``; a factor update is
    the top eigenvector of the ``D × D`` block left after contracting the
    other factors, so the objective never decreases within a run.

    Parameters
    ----------
    u
        Hermitian probes of shape ``(B, d, d)`` with ``d = Dᴺ``.
    D, N
        Factor structure.
    n_starts, n_sweeps, tol
        Restarts, sweep cap and early-stop threshold. Default to settings.
    stream
        Seeds the restarts.

    Returns
    -------
    Best value per probe, shape ``(B,)``, and the maximizing factors,
    shape ``(B, N, D)``.
    """
    n_starts, n_sweeps, tol = _resolve(n_starts, n_sweeps, tol)
    stream = as_stream(stream)
    B = u.shape[0]
    t = u.reshape((B,) + (D,) * (2 * N))
    xs = np.repeat(initial_factors(B, N, D, n_starts, stream), 2, axis=1)
    signs = np.tile([1.0, -1.0], n_starts)[None, :, None, None]
    value = np.full((B, 2 * n_starts), -np.inf)
    for sweep in range(n_sweeps):
        previous = value
        for k in range(N):
            block = signs * _reduce_operator(t, xs, xs, k, N)
            block = (block + np.conj(np.swapaxes(block, -1, -2))) / 2
            w, v = np.linalg.eigh(block)
            xs[:, :, k, :] = v[..., -1]
            value = w[..., -1]
        if _converged(value, previous, tol):
            logger.debug(f"Product eigen-maximization converged after {sweep + 1} sweeps.")
            break
    best = np.argmax(value, axis=1)
    return value[np.arange(B), best], xs[np.arange(B), best]


def bilinear_product_max(
    u: np.ndarray,
    D: int,
    N: int,
    n_starts: Optional[int] = None,
    n_sweeps: Optional[int] = None,
    stream=None,
    tol: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    Maximize ``Re⟨y₁⊗…⊗y_N| u |x₁⊗…⊗x_N⟩`` over unit factors.

    Factor pairs ``(x_k, y_k)`` are updated together to the top singular pair
    of the reduced ``D × D`` block.

    Returns
    -------
    Best value per probe, and the maximizing ``y`` and ``x`` factors.
    """
    n_starts, n_sweeps, tol = _resolve(n_starts, n_sweeps, tol)
    stream = as_stream(stream)
    B = u.shape[0]
    t = u.reshape((B,) + (D,) * (2 * N))
    init = initial_factors(B, 2 * N, D, n_starts, stream)
    ys, xs = init[:, :, :N, :].copy(), init[:, :, N:, :].copy()
    value = np.full((B, n_starts), -np.inf)
    for sweep in range(n_sweeps):
        previous = value
        for k in range(N):
            block = _reduce_operator(t, ys, xs, k, N)
            left, s, right_h = np.linalg.svd(block)
            ys[:, :, k, :] = left[..., :, 0]
            xs[:, :, k, :] = right_h[..., 0, :].conj()
            value = s[..., 0]
        if _converged(value, previous, tol):
            logger.debug(f"Product singular-maximization converged after {sweep + 1} sweeps.")
            break
    best = np.argmax(value, axis=1)
    idx = np.arange(B)
    return value[idx, best], ys[idx, best], xs[idx, best]


def multilinear_max(
    a: np.ndarray,
    D: int,
    m: int,
    field: Literal["real", "complex"] = "complex",
    n_starts: Optional[int] = None,
    n_sweeps: Optional[int] = None,
    stream=None,
    tol: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Maximize ``|Σ a_{i₁…i_m} x¹_{i₁}…x^m_{i_m}|`` over unit vectors.

    Higher-order power iteration: the update of mode ``k`` aligns ``x^k`` with
    the contraction of ``a`` against the other modes.

    Parameters
    ----------
    a
        Tensors of shape ``(B,) + (D,)*m``.
    field
        Whether the unit vectors range over ``ℝᴰ`` or ``ℂᴰ``.

    Returns
    -------
    Best value per tensor and the maximizing vectors, shape ``(B, m, D)``.
    """
    n_starts, n_sweeps, tol = _resolve(n_starts, n_sweeps, tol)
    stream = as_stream(stream)
    B = a.shape[0]
    xs = initial_factors(B, m, D, n_starts, stream, field)
    if field == "real":
        a = np.asarray(a, dtype=float)
    value = np.full((B, n_starts), -np.inf)
    for sweep in range(n_sweeps):
        previous = value
        for k in range(m):
            c = _contract_tensor(a, xs, k, m)
            norm = np.linalg.norm(c, axis=-1)
            safe = np.where(norm > 0, norm, 1.0)[..., None]
            update = c.conj() / safe if field == "complex" else c / safe
            xs[:, :, k, :] = np.where(norm[..., None] > 0, update, xs[:, :, k, :])
            value = norm
        if _converged(value, previous, tol):
            logger.debug(f"Tensor power iteration converged after {sweep + 1} sweeps.")
            break
    best = np.argmax(value, axis=1)
    idx = np.arange(B)
    return value[idx, best], xs[idx, best]
