import numpy as np
import pytest

from sepvol.bodies import oracle_Sigma
from sepvol.operators import FactorShape
from sepvol.sampling import SeededStream, gaussian_hermitian_batch, sample_haar_unitary
from sepvol.tensor_norms import (
    GeneralizedMatrix,
    TensorPowerBall,
    chevet_gordon_bound,
    chevet_gordon_spherical,
    inradius_inclusion_sigma,
    injective_norm,
    net_width_bound,
    slice_lower_bound,
    vrad_tensor_power_bound,
)
from sepvol.widths import gamma_n, gaussian_width_mc


def _rank_one(*vectors):
    out = vectors[0]
    for v in vectors[1:]:
        out = np.multiply.outer(out, v)
    return out


def test_generalized_matrix():
    a = GeneralizedMatrix(np.ones((2, 2, 2)), field="real")
    assert a.D == 2 and a.m == 3
    assert a.norm2 == pytest.approx(np.sqrt(8))
    with pytest.raises(ValueError):
        GeneralizedMatrix(np.ones((2, 3)))
    with pytest.raises(ValueError):
        GeneralizedMatrix(np.ones(2), field="quaternion")
    with pytest.raises(ValueError):
        a.entries[0, 0, 0] = 2


def test_injective_norm_low_order(rng):
    v = rng.standard_normal(4)
    assert injective_norm(GeneralizedMatrix(v, "real")) == pytest.approx(np.linalg.norm(v))
    m = rng.standard_normal((3, 3))
    expected = np.linalg.svd(m, compute_uv=False)[0]
    assert injective_norm(GeneralizedMatrix(m, "real")) == pytest.approx(expected)


def test_injective_norm_rank_one(rng, stream):
    vectors = [x / np.linalg.norm(x) for x in rng.standard_normal((3, 3))]
    a = GeneralizedMatrix(2.5 * _rank_one(*vectors), "real")
    assert injective_norm(a, stream=stream) == pytest.approx(2.5, rel=1e-8)


def test_injective_norm_ghz(stream):
    ghz = np.zeros((2, 2, 2))
    ghz[0, 0, 0] = ghz[1, 1, 1] = 1 / np.sqrt(2)
    a = GeneralizedMatrix(ghz, "complex")
    assert injective_norm(a, stream=stream) == pytest.approx(1 / np.sqrt(2), rel=1e-8)


def test_injective_norm_is_invariant_under_local_unitaries(stream):
    a = GeneralizedMatrix.random(2, 3, stream.child(0), field="complex")
    u, v, w = (sample_haar_unitary(2, stream.child(i)) for i in (1, 2, 3))
    rotated = GeneralizedMatrix(np.einsum("ai,bj,ck,ijk->abc", u, v, w, a.entries), "complex")
    assert rotated.norm2 == pytest.approx(a.norm2)
    value = injective_norm(a, n_starts=32, n_sweeps=500, stream=stream.child(4))
    assert injective_norm(rotated, n_starts=32, n_sweeps=500, stream=stream.child(5)) == pytest.approx(
        value, rel=1e-7
    )


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_injective_norm_matches_grid_search(seed):
    a = GeneralizedMatrix.random(2, 3, SeededStream(seed), field="real")
    # 100 angles per factor cover the real unit circle up to sign
    theta = np.linspace(0, np.pi, 100, endpoint=False)
    x = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    grid = np.abs(np.einsum("ijk,ai,bj,ck->abc", a.entries, x, x, x)).max()
    value = injective_norm(a, n_sweeps=500, stream=SeededStream(seed).child(1))
    assert value == pytest.approx(grid, abs=1e-3)
    assert value >= grid - 1e-12


def test_injective_norm_between_norm2_bounds(stream):
    for i in range(5):
        a = GeneralizedMatrix.random(3, 3, stream.child(i), field="real")
        value = injective_norm(a, stream=stream.child(100 + i))
        assert a.norm2 / 3 - 1e-12 <= value <= a.norm2 + 1e-12


def test_slice_certificate(stream):
    a = GeneralizedMatrix.random(3, 3, stream.child(0), field="real")
    cert = slice_lower_bound(a, n_trials=2000, stream=stream.child(1))
    y, bound = cert.recompute(a)
    np.testing.assert_allclose(y, cert.slice_values)
    assert bound == pytest.approx(cert.bound)
    assert cert.reached_target
    assert cert.bound <= injective_norm(a, stream=stream.child(2)) + 1e-9
    # witnesses drawn uniformly give E Σ|Y_k|² = ‖A‖₂²/D^{m−1}
    assert abs(cert.mean_mass - cert.target**2) <= 4 * cert.mass_std_error


def test_slice_certificate_validation_and_cap(stream):
    with pytest.raises(ValueError):
        slice_lower_bound(GeneralizedMatrix(np.ones(3), "real"))
    with pytest.raises(ValueError):
        slice_lower_bound(GeneralizedMatrix(np.ones((2, 2)), "real"), n_trials=1)

    e = np.eye(2)[0]
    a = GeneralizedMatrix(_rank_one(e, e, e), "real")
    # a rank-one array has slice mass at most 1, below a goal of 2
    with pytest.warns(RuntimeWarning):
        cert = slice_lower_bound(a, n_trials=10, stream=stream, slack=-7.0, max_trials=50)
    assert cert.trials == 50


def test_chevet_gordon():
    assert chevet_gordon_bound(1.0, 2.0) == 3.0
    with pytest.raises(ValueError):
        chevet_gordon_bound(-1.0, 2.0)
    value = chevet_gordon_spherical(1.0, 1.0, 3, 3)
    assert value == pytest.approx(2 * gamma_n(3) / gamma_n(9))


def test_net_width_bound():
    with pytest.raises(ValueError):
        net_width_bound(3, 4, 0.0)
    with pytest.raises(ValueError):
        net_width_bound(3, 4, 1.5)
    bound = vrad_tensor_power_bound(3, 4)
    assert bound.bound <= net_width_bound(3, 4, 1 / np.sqrt(4 * np.log(8))) + 1e-12


@pytest.mark.parametrize("m", range(2, 13))
def test_tensor_power_bound_constant(m):
    bound = vrad_tensor_power_bound(3, m, "real")
    assert bound.bound <= 1.673 * np.sqrt(m * np.log(m)) / 3 ** ((m - 1) / 2)


def test_tensor_power_bound_validation():
    with pytest.raises(ValueError):
        vrad_tensor_power_bound(3, 1)
    with pytest.raises(ValueError):
        vrad_tensor_power_bound(3, 2, "quaternion")
    bound = vrad_tensor_power_bound(2, 8, "complex")
    assert bound.method == "net" or bound.method.startswith("chevet_gordon")


def test_tensor_power_ball_width_below_bound(stream):
    ball = TensorPowerBall(3, 2, "real")
    assert ball.is_exact
    width = gaussian_width_mc(ball, 5000, stream).spherical()
    assert width.lower(3) <= vrad_tensor_power_bound(3, 2, "real").bound


def test_tensor_power_ball_support(rng, stream):
    ball = TensorPowerBall(2, 3, "real", stream=stream)
    assert ball.exactness == "lower_bound"
    e = np.eye(2)
    assert ball.support(_rank_one(e[0], e[1], e[0]).ravel()) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        TensorPowerBall(0, 2)


@pytest.mark.parametrize("D,N,radius", [(2, 1, 0.433), (2, 2, 0.0884)])
def test_inradius_values(D, N, radius):
    record = inradius_inclusion_sigma(FactorShape(D, N))
    assert record.radius == pytest.approx(radius, abs=5e-4)
    assert record.radius_chain <= record.radius
    assert record.d_N_sharp <= record.d_N_chain


def test_inradius_against_probes(stream):
    shape = FactorShape(2, 2)
    radius = inradius_inclusion_sigma(shape).radius
    body = oracle_Sigma(shape, stream=stream)
    u = gaussian_hermitian_batch(4, 30, stream.child(1).generator())
    norms = np.linalg.norm(u, axis=(1, 2))
    assert np.all(body.support_batch(u) >= radius * norms)


@pytest.mark.parametrize("D,m", [(2, 2), (2, 3), (3, 2), (3, 3)])
def test_slice_mass_matches_average(D, m, stream):
    a = GeneralizedMatrix.random(D, m, stream.child(D * 10 + m), field="complex")
    cert = slice_lower_bound(a, n_trials=10_000, stream=stream.child(1), slack=0.0)
    assert abs(cert.mean_mass - cert.target**2) <= 3 * cert.mass_std_error
    assert cert.bound >= cert.target
    assert cert.bound <= injective_norm(a, stream=stream.child(2)) + 1e-9
