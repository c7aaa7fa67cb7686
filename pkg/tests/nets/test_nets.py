import numpy as np
import pytest

from sepvol.bodies import oracle_Delta, oracle_Sigma
from sepvol.operators import FactorShape
from sepvol.sampling import SeededStream, gaussian_hermitian_batch
from sepvol.nets import (
    DELTA_MAX,
    NetPolytope,
    SphereNet,
    build_net,
    covering_radius,
    default_delta,
    lemma3_sandwich_check,
    load_net,
    sampled_polytope_width_check,
    sandwich_factor,
    save_net,
    sigma_width_upper,
    sigma_width_upper_report,
)
from sepvol.widths import gaussian_width_mc


@pytest.fixture(scope="module")
def qubit_net():
    return build_net(4, 0.5, SeededStream(0))


@pytest.fixture(scope="module")
def coarse_net():
    return build_net(4, 0.7, SeededStream(12))


def test_circle_net_size():
    net = build_net(2, 0.5, SeededStream(1))
    # covering the circle at 0.5 needs 7 points; a 0.5-packing has at most 12
    assert 7 <= len(net) <= 12
    assert covering_radius(net, stream=SeededStream(2)) <= 0.51


def test_qubit_net(qubit_net):
    assert qubit_net.is_complex and qubit_net.D == 2
    assert len(qubit_net) <= 625
    np.testing.assert_allclose(np.linalg.norm(qubit_net.points, axis=1), 1, atol=1e-12)
    assert covering_radius(qubit_net, stream=SeededStream(5)) <= 0.55
    kets = qubit_net.complex_points()
    assert kets.shape == (len(qubit_net), 2)


def test_net_is_a_packing(qubit_net):
    from scipy.spatial.distance import pdist

    assert pdist(qubit_net.points).min() > 0.5


def test_build_net_validation():
    with pytest.raises(ValueError):
        build_net(4, 0.0)
    with pytest.raises(ValueError):
        build_net(4, 2.5)
    with pytest.raises(ValueError):
        build_net(0, 0.5)


def test_sphere_net_validation():
    with pytest.raises(ValueError):
        SphereNet(3, 0.5, np.ones((4, 2)))
    with pytest.raises(ValueError):
        SphereNet(2, 0.5, np.ones((4, 2)))
    odd = SphereNet(3, 0.5, np.eye(3))
    with pytest.raises(ValueError):
        odd.D


def test_save_and_load(tmp_path, qubit_net):
    path = tmp_path / "net.bin"
    save_net(qubit_net, path)
    assert path.stat().st_size == 8 + 8 * 4 * len(qubit_net)
    loaded = load_net(path, 0.5)
    np.testing.assert_array_equal(loaded.points, qubit_net.points)
    assert loaded.dim_real == 4 and loaded.delta == 0.5

    path.write_bytes(path.read_bytes()[:-8])
    with pytest.raises(ValueError):
        load_net(path, 0.5)
    path.write_bytes(b"\x00")
    with pytest.raises(ValueError):
        load_net(path, 0.5)


def test_sandwich_factor():
    assert sandwich_factor(0.0) == 1.0
    assert sandwich_factor(DELTA_MAX) == pytest.approx(0.0, abs=1e-12)
    assert sandwich_factor(0.5) == pytest.approx(0.53125)


def test_lemma3_sandwich(qubit_net):
    record = lemma3_sandwich_check(qubit_net, probes=500, stream=SeededStream(3))
    assert record.passed
    assert record.constant <= record.worst_ratio <= record.best_ratio <= 1 + 1e-12
    assert record.net_size == len(qubit_net)


@pytest.mark.slow
def test_lemma3_sandwich_fine_net():
    net = build_net(4, 0.3, SeededStream(4))
    assert lemma3_sandwich_check(net, probes=1000, stream=SeededStream(5)).passed


@pytest.mark.parametrize(
    "D,delta",
    [
        (2, 0.4),
        pytest.param(3, 0.4, marks=pytest.mark.slow),
        pytest.param(2, 0.2, marks=pytest.mark.slow),
        pytest.param(3, 0.2, marks=pytest.mark.slow),
    ],
)
def test_lemma3_sandwich_grid(D, delta):
    net = build_net(2 * D, delta, SeededStream(40 + D))
    record = lemma3_sandwich_check(net, probes=1000, stream=SeededStream(7))
    assert record.passed
    assert record.worst_ratio >= sandwich_factor(delta)


def test_lemma3_rejects_coarse_nets():
    net = build_net(4, 0.9, SeededStream(6))
    with pytest.raises(ValueError):
        lemma3_sandwich_check(net)


def test_net_polytope_between_bodies(coarse_net):
    shape = FactorShape(2, 2)
    polytope = NetPolytope(coarse_net, N=2)
    assert polytope.n_sign_classes == len(coarse_net) ** 2 <= 2**16
    u = gaussian_hermitian_batch(4, 10, np.random.default_rng(1))
    h = polytope.support_batch(u)
    sigma = oracle_Sigma(shape, stream=SeededStream(7)).support_batch(u)
    assert np.all(h >= polytope.sandwich_constant() * sigma - 1e-9)
    assert np.all(h <= oracle_Delta(shape).support_batch(u) + 1e-12)


def test_net_polytope_enumeration_cap(qubit_net):
    polytope = NetPolytope(qubit_net, N=3)
    assert polytope.n_sign_classes > 2**16
    with pytest.raises(ValueError):
        polytope.support_batch(np.zeros((1, 8, 8)))
    vertices = polytope.sample_vertices(5, SeededStream(8))
    assert vertices.shape == (5, 8, 8)
    np.testing.assert_allclose(np.abs(np.trace(vertices, axis1=1, axis2=2)), 1, atol=1e-12)


def test_sampled_polytope_width(coarse_net):
    record = sampled_polytope_width_check(NetPolytope(coarse_net, N=2), stream=SeededStream(9))
    assert record.passed


def test_default_delta():
    assert default_delta(1) is None
    assert default_delta(2) == pytest.approx(1 / np.sqrt(2 * np.log(4)))
    assert all(0 < default_delta(N) < DELTA_MAX for N in range(2, 10))


def test_sigma_width_upper():
    shape = FactorShape(2, 2)
    with pytest.raises(ValueError):
        sigma_width_upper(shape, 0.9)
    with pytest.raises(ValueError):
        sigma_width_upper(shape, 0.3, ellipsoid="john")
    hs = sigma_width_upper(shape, 0.3)
    assert sigma_width_upper(shape, 0.3, ellipsoid="lowner") < hs

    record = sigma_width_upper_report(shape, delta=0.3)
    assert record.bound == min(record.at_delta, record.at_default_delta, record.at_optimal_delta)
    assert record.bound <= record.at_optimal_delta


def test_sigma_width_upper_single_factor():
    record = sigma_width_upper_report(FactorShape(3))
    assert record.default_delta is None and record.at_default_delta is None
    assert record.bound == record.at_optimal_delta


@pytest.mark.parametrize("N", range(2, 9))
def test_sigma_width_upper_scaling(N):
    shape = FactorShape(2, N)
    bound = sigma_width_upper_report(shape).bound
    assert bound * shape.d / np.sqrt(2 * N * np.log(N)) <= 5


def test_sigma_width_upper_above_mc():
    shape = FactorShape(2, 2)
    width = gaussian_width_mc(
        oracle_Sigma(shape, stream=SeededStream(10)), 500, SeededStream(11)
    ).spherical()
    assert width.lower(3) <= sigma_width_upper_report(shape).bound
