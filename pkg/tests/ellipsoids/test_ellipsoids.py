import numpy as np
import pytest

from sepvol.bodies import oracle_Delta, oracle_Sigma
from sepvol.ellipsoids import (
    LownerForm,
    alpha_D,
    classical_sandwich_check,
    form_matrix,
    john_resolution_check,
    lowner_coefficients_cvx,
    lowner_containment_check,
    lowner_exponent_identity,
    lowner_inner,
    lowner_inradius,
    oracle_lowner,
    phi_map,
    psi_determinant_identity,
    random_trace_norm_one,
)
from sepvol.operators import FactorShape, HermitianOp, trace_norm
from sepvol.sampling import gaussian_hermitian_batch


def _random_op(rng, shape):
    z = rng.standard_normal((shape.d, shape.d)) + 1j * rng.standard_normal((shape.d, shape.d))
    return HermitianOp(z, shape)


def test_alpha_D():
    assert alpha_D(2) == pytest.approx(0.0943, abs=1e-4)
    for D, value in [(2, 0.094), (3, 0.061), (4, 0.044)]:
        assert alpha_D(D) == pytest.approx(value, abs=1e-3)
    assert all(alpha_D(D) > 0 for D in range(2, 20))
    assert alpha_D(100) * 2 * 100 * np.log(100) == pytest.approx(0.949, abs=1e-3)
    with pytest.raises(ValueError):
        alpha_D(1)


def test_phi_determinant():
    assert np.exp(phi_map(2).log_det) == pytest.approx(4 / (3 * np.sqrt(3)))
    assert phi_map(3).log_det_power(1) == pytest.approx(phi_map(3).log_det)


def test_phi_inverse(rng):
    shape = FactorShape(2, 2)
    phi = phi_map(2)
    a = _random_op(rng, shape)
    np.testing.assert_allclose(phi.inverse(phi(a)).entries, a.entries, atol=1e-12)
    eye = HermitianOp.identity(FactorShape(3))
    np.testing.assert_allclose(phi_map(3)(eye).entries, np.sqrt(3) * np.eye(3), atol=1e-12)
    with pytest.raises(ValueError):
        phi(HermitianOp.identity(FactorShape(3)))


@pytest.mark.parametrize("D,N", [(2, 1), (3, 1), (2, 2), (3, 2), (2, 3), (3, 3)])
def test_psi_determinant_identity(D, N):
    assert psi_determinant_identity(D, N).passed
    assert lowner_exponent_identity(D, N).passed


def test_lowner_form_single_factor(rng):
    form = LownerForm(3)
    assert form.alpha == pytest.approx(4 / 3) and form.beta == pytest.approx(-1 / 3)
    a, b = _random_op(rng, form.shape), _random_op(rng, form.shape)
    phi = form.phi
    expected = np.vdot(phi.inverse(a).entries, phi.inverse(b).entries).real
    assert lowner_inner(form, a, b) == pytest.approx(expected)
    with pytest.raises(ValueError):
        LownerForm(1)
    with pytest.raises(ValueError):
        form.norm(_random_op(rng, FactorShape(2)))


def test_form_matrix_spectrum():
    eig = np.linalg.eigvalsh(form_matrix(LownerForm(3)))
    np.testing.assert_allclose(eig, [1 / 3] + [4 / 3] * 8, atol=1e-12)
    eig = np.linalg.eigvalsh(form_matrix(LownerForm(2, 2)))
    expected = sorted([0.25] + [0.75] * 6 + [2.25] * 9)
    np.testing.assert_allclose(eig, expected, atol=1e-12)


def test_pure_states_touch_the_ellipsoid(rng):
    form = LownerForm(2)
    x = rng.standard_normal(2) + 1j * rng.standard_normal(2)
    assert form.norm(HermitianOp.pure_state(x)) == pytest.approx(1.0)
    centre = HermitianOp.identity(form.shape) / 2
    assert form.norm(centre) == pytest.approx(0.5)


def test_lowner_contains_trace_norm_ball(rng):
    shape = FactorShape(3)
    low, delta = oracle_lowner(shape), oracle_Delta(shape)
    u = gaussian_hermitian_batch(3, 50, rng)
    assert np.all(low.support_batch(u) >= delta.support_batch(u) - 1e-12)
    ops = random_trace_norm_one(3, 20, rng)
    form = LownerForm(3)
    for a in ops:
        op = HermitianOp(a, shape)
        assert trace_norm(op) == pytest.approx(1.0)
        assert form.norm(op) <= 1 + 1e-10


def test_lowner_contains_sigma(stream):
    shape = FactorShape(2, 2)
    low, sigma = oracle_lowner(shape), oracle_Sigma(shape, stream=stream)
    u = gaussian_hermitian_batch(4, 20, stream.child(1).generator())
    assert np.all(low.support_batch(u) >= sigma.support_batch(u) - 1e-9)


def test_lowner_inradius(stream):
    assert lowner_inradius(FactorShape(2)) == pytest.approx(1 / np.sqrt(6))
    shape = FactorShape(2, 2)
    radius = lowner_inradius(shape)
    assert radius == pytest.approx(1 / 6)
    sigma = oracle_Sigma(shape, stream=stream)
    u = gaussian_hermitian_batch(4, 30, stream.child(1).generator())
    assert np.all(sigma.support_batch(u) >= radius * np.linalg.norm(u, axis=(1, 2)))


def test_john_resolution(stream):
    record = john_resolution_check(2, n_pure=100_000, stream=stream)
    assert record.passed
    assert record.h == pytest.approx(0.5)
    assert record.contact_gap <= 1e-10


@pytest.mark.parametrize("D", [2, 3])
def test_containment_and_sandwich(D, stream):
    assert lowner_containment_check(D, stream=stream).passed
    sandwich = classical_sandwich_check(D, samples=200, stream=stream)
    assert sandwich.passed


def test_lowner_coefficients_cvx(stream):
    alpha, beta = lowner_coefficients_cvx(2, n_points=200, stream=stream)
    assert alpha == pytest.approx(1.5, abs=0.05)
    assert beta == pytest.approx(-0.5, abs=0.05)
