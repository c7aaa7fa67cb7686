import logging
from typing import Optional, Sequence, Tuple

import cvxpy as cp
import numpy as np

from sepvol.operators import FactorShape, HermitianOp, to_coordinates
from sepvol.sampling import as_generator, as_stream, haar_vectors
from sepvol.utils import CheckRecord, mc_dsp

from ._lowner import LownerForm, lowner_inner, phi_map

logger = logging.getLogger(__name__)


def _pure_states(D: int, size: int, rng: np.random.Generator) -> np.ndarray:
    x = haar_vectors(D, size, rng)
    return x[:, :, None] * x[:, None, :].conj()


def random_trace_norm_one(D: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """Hermitian ``D × D`` matrices with ``‖A‖₁ = 1``, random spectrum and eigenbasis."""
    lam = rng.standard_normal((size, D))
    lam /= np.abs(lam).sum(axis=-1, keepdims=True)
    q, r = np.linalg.qr(
        rng.standard_normal((size, D, D)) + 1j * rng.standard_normal((size, D, D))
    )
    q = q * (np.diagonal(r, axis1=-2, axis2=-1) / np.abs(np.diagonal(r, axis1=-2, axis2=-1)))[:, None, :]
    return (q * lam[:, None, :]) @ np.conj(np.swapaxes(q, -1, -2))


def _form_values(D: int, ops: np.ndarray) -> np.ndarray:
    """``⟨A, A⟩_Löw`` on a batch of single-factor operators."""
    hs = np.einsum("zij,zij->z", ops.conj(), ops).real
    tr = np.trace(ops, axis1=-2, axis2=-1).real
    return (1 + 1 / D) * hs - tr**2 / D


@mc_dsp.dedent
def john_resolution_check(D: int, n_pure: int = 100_000, stream=None) -> CheckRecord:
    """
    Empirical John resolution of identity in the Löwner geometry of ``Δ(ℂᴰ)``.

    Pure states are contact points of ``Δ(ℂᴰ)`` with its Löwner ellipsoid.
    Mapping them by ``Φ⁻¹`` into the HS unit sphere, the frame operator of the
    images under Haar averaging is ``Id/D²``; the check bounds the spectral
    deviation of ``D²·F̂ − Id`` by ``5/√n_pure``. It also checks that the
    distance ``h`` from ``𝒯₁`` to the origin in the form norm is ``1/√n`` with
    ``n = D²``.

    Parameters
    ----------
    D
        Local dimension.
    n_pure
        Number of Haar pure states.
    %(param_stream)s
    """
    rng = as_generator(as_stream(stream))
    rho = _pure_states(D, n_pure, rng)
    form_norms = np.sqrt(_form_values(D, rho))
    phi = phi_map(D)
    s = phi.scale
    eye = np.eye(D)
    images = (rho - eye / D) / s + eye / (D * np.sqrt(D))
    x = to_coordinates(images)
    frame = D * D * (x.T @ x) / n_pure
    eig = np.linalg.eigvalsh(frame)
    deviation = float(np.abs(eig - 1).max())
    tolerance = 5 / np.sqrt(n_pure)

    form = LownerForm(D)
    centre = HermitianOp.identity(FactorShape(D)) / D
    h_squared = lowner_inner(form, centre, centre)
    contact_gap = float(np.abs(form_norms - 1).max())
    record = CheckRecord(
        frame_eigenvalues=eig,
        spread=float(eig.max() - eig.min()),
        deviation=deviation,
        tolerance=float(tolerance),
        h=float(np.sqrt(h_squared)),
        h_expected=1 / D,
        contact_gap=contact_gap,
        passed=bool(
            deviation <= tolerance
            and abs(h_squared - 1 / D**2) <= 1e-12
            and contact_gap <= 1e-10
        ),
    )
    logger.info(f"John resolution D={D}: deviation {deviation:.2e} (tolerance {tolerance:.2e}).")
    return record


def lowner_containment_check(D: int, samples: int = 1000, stream=None) -> CheckRecord:
    """Check ``Δ(ℂᴰ) ⊂ Löw``: form norm at most ``1 + 1e−10`` on trace-norm-one operators."""
    rng = as_generator(as_stream(stream))
    ops = random_trace_norm_one(D, samples, rng)
    worst = float(np.sqrt(_form_values(D, ops).max()))
    return CheckRecord(worst_form_norm=worst, passed=bool(worst <= 1 + 1e-10))


def classical_sandwich_check(D: int, samples: int = 1000, stream=None) -> CheckRecord:
    """
    Probe ``Löw(Δ) ⊂ √n Δ`` with ``n = D²`` through support functions.

    ``h_Löw(u) = ‖Φ(u)‖_HS`` must not exceed ``√n ‖u‖_op``.
    """
    rng = as_generator(as_stream(stream))
    shape = FactorShape(D)
    phi = phi_map(D)
    z = rng.standard_normal((samples, D, D)) + 1j * rng.standard_normal((samples, D, D))
    ratios = []
    for m in z:
        u = HermitianOp(m, shape)
        op = np.abs(np.linalg.eigvalsh(u.entries)).max()
        ratios.append(phi(u).hs_norm / op)
    worst = float(max(ratios))
    return CheckRecord(worst_ratio=worst, sqrt_n=float(D), passed=bool(worst <= D + 1e-12))


def lowner_coefficients_cvx(
    D: int,
    points: Optional[Sequence[HermitianOp]] = None,
    n_points: int = 200,
    stream=None,
) -> Tuple[float, float]:
    """
    Fit the unitarily invariant Löwner form ``α tr(AB) + β tr(A) tr(B)`` by convex optimization.

    The ellipsoid ``{A : α‖A‖²_HS + β (tr A)² ≤ 1}`` has volume proportional to
    ``(α^{D²−1} (α + Dβ))^{−1/2}``; the log-volume is minimized subject to
    containment of the given points of ``Δ(ℂᴰ)``.

    Parameters
    ----------
    D
        Local dimension.
    points
        Points of ``Δ(ℂᴰ)``. Defaults to ``n_points`` Haar pure states and as
        many random trace-norm-one operators.
    n_points
        Number of sampled points of each kind when ``points`` is None.
    stream
        Seeds the sampled points.

    Returns
    -------
    The fitted ``(α, β)``; the closed form is ``(1 + 1/D, −1/D)``.
    """
    if points is None:
        rng = as_generator(as_stream(stream))
        ops = np.concatenate(
            [_pure_states(D, n_points, rng), random_trace_norm_one(D, n_points, rng)]
        )
    else:
        ops = np.array([p.entries for p in points])
    hs = np.einsum("zij,zij->z", ops.conj(), ops).real
    tr2 = np.trace(ops, axis1=-2, axis2=-1).real ** 2

    alpha = cp.Variable()
    beta = cp.Variable()
    objective = cp.Maximize((D * D - 1) * cp.log(alpha) + cp.log(alpha + D * beta))
    constraints = [hs * alpha + tr2 * beta <= 1]
    problem = cp.Problem(objective, constraints)
    problem.solve()
    if problem.status not in (cp.OPTIMAL, cp.OPTIMAL_INACCURATE):
        raise ValueError(f"Löwner fit did not converge: status {problem.status}.")
    logger.debug(f"Löwner fit D={D}: alpha={alpha.value:.6f}, beta={beta.value:.6f}")
    return float(alpha.value), float(beta.value)
