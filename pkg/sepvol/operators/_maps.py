from typing import List, Union

import numpy as np

from sepvol._types import Number

from ._hermitian import HermitianOp
from ._shape import FactorShape


def factorwise_map(a: HermitianOp, keep: Number, trace_shift: Number) -> HermitianOp:
    """
    Apply ``X ↦ keep·X + trace_shift·tr(X)·Id/D`` on every tensor factor.

    The single-factor map is applied to each factor in turn through partial
    traces, which realizes its N-fold tensor power without forming a
    ``d² × d²`` matrix.

    Parameters
    ----------
    a
        Operator on ``(ℂᴰ)^{⊗N}``.
    keep
        Coefficient of the identity part of the single-factor map.
    trace_shift
        Coefficient of the trace part, ``X ↦ tr(X)·Id/D``.

    Returns
    -------
    The image under the N-fold tensor power of the single-factor map.
    """
    D, N = a.shape.D, a.shape.N
    t = np.array(a.entries).reshape((D,) * (2 * N))
    for k in range(N):
        partial = np.trace(t, axis1=k, axis2=N + k)
        partial = np.expand_dims(partial, axis=(k, N + k))
        eye_shape = [1] * (2 * N)
        eye_shape[k] = eye_shape[N + k] = D
        eye = np.eye(D).reshape(eye_shape)
        t = keep * t + trace_shift * partial * eye / D
    return HermitianOp(t.reshape(a.dim, a.dim), a.shape)


def traceless_project(a: HermitianOp, per_factor: bool = False) -> HermitianOp:
    """
    Orthogonal projection onto trace-zero operators.

    Parameters
    ----------
    a
        Operator to project.
    per_factor
        If ``False``, returns ``a − (tr a/d)·Id``. If ``True``, applies the
        single-factor projection ``P`` on every factor, i.e. ``Π = P^{⊗N}``,
        which removes every product-basis component containing ``Id/√D``.
    """
    if per_factor:
        return factorwise_map(a, 1.0, -1.0)
    d = a.dim
    return HermitianOp(a.entries - (a.trace / d) * np.eye(d), a.shape)


def hs_basis(shape: FactorShape) -> List[HermitianOp]:
    """
    Hilbert-Schmidt orthonormal basis of the self-adjoint operators.

    Ordering matches :func:`to_coordinates`: diagonal units first, then for each
    pair ``i < j`` the symmetric element followed by the antisymmetric one.
    """
    d = shape.d
    return [from_coordinates(e, shape) for e in np.eye(d * d)]


def to_coordinates(a: Union[HermitianOp, np.ndarray]) -> np.ndarray:
    """
    Real coordinates in :func:`hs_basis`, an HS isometry onto ``ℝ^{d²}``.

    Raw arrays of shape ``(..., d, d)`` are mapped along their leading axes.
    """
    m = a.entries if isinstance(a, HermitianOp) else np.asarray(a)
    d = m.shape[-1]
    iu, ju = np.triu_indices(d, k=1)
    off = np.sqrt(2) * m[..., iu, ju]
    pairs = np.stack([off.real, off.imag], axis=-1).reshape(m.shape[:-2] + (-1,))
    diag = np.diagonal(m, axis1=-2, axis2=-1).real
    return np.concatenate([diag, pairs], axis=-1)


def from_coordinates(x: np.ndarray, shape: FactorShape) -> HermitianOp:
    """Inverse of :func:`to_coordinates`."""
    d = shape.d
    x = np.asarray(x, dtype=float)
    if x.shape != (d * d,):
        raise ValueError(f"Expected {d * d} coordinates, got shape {x.shape}.")
    m = np.zeros((d, d), dtype=np.complex128)
    m[np.diag_indices(d)] = x[:d]
    iu, ju = np.triu_indices(d, k=1)
    pairs = x[d:].reshape(-1, 2)
    upper = (pairs[:, 0] + 1j * pairs[:, 1]) / np.sqrt(2)
    m[iu, ju] = upper
    m[ju, iu] = upper.conj()
    return HermitianOp(m, shape)
