import numpy as np
import pytest

from sepvol._constants import CONSTANTS
from sepvol.bodies import oracle_D
from sepvol.operators import DensityMatrix, FactorShape, HermitianOp, hs_inner, tensor
from sepvol.ppt import (
    bell_state,
    is_ppt,
    partial_transpose,
    partial_transpose_batch,
    ppt_fraction_mc,
    theorem4_chain,
    werner_ppt_threshold,
    werner_state,
)
from sepvol.sampling import SeededStream, ginibre_states, sample_density_uniform
from sepvol.widths import WidthEstimate, gaussian_width_mc, wilson_estimate


def _random_op(rng, shape):
    z = rng.standard_normal((shape.d, shape.d)) + 1j * rng.standard_normal((shape.d, shape.d))
    return HermitianOp(z, shape)


def test_partial_transpose_swaps_indices(rng):
    shape = FactorShape(2, 2)
    a = _random_op(rng, shape)
    t = partial_transpose(a).entries.reshape(2, 2, 2, 2)
    np.testing.assert_allclose(t, a.entries.reshape(2, 2, 2, 2).transpose(2, 1, 0, 3))


def test_partial_transpose_is_an_isometric_involution(rng):
    shape = FactorShape(3, 2)
    a, b = _random_op(rng, shape), _random_op(rng, shape)
    np.testing.assert_allclose(partial_transpose(partial_transpose(a)).entries, a.entries)
    assert hs_inner(partial_transpose(a), partial_transpose(b)) == pytest.approx(hs_inner(a, b))
    mixed = HermitianOp.identity(shape) / 9
    np.testing.assert_allclose(partial_transpose(mixed).entries, mixed.entries)


def test_partial_transpose_subsystems(rng):
    shape = FactorShape(2, 2)
    a = _random_op(rng, shape)
    np.testing.assert_allclose(
        partial_transpose(a, subsystem=1).entries, partial_transpose(a).entries.T, atol=1e-15
    )
    with pytest.raises(ValueError):
        partial_transpose(a, subsystem=2)
    with pytest.raises(ValueError):
        partial_transpose(a, FactorShape(3, 2))


def test_partial_transpose_batch(rng):
    shape = FactorShape(2, 2)
    rho = ginibre_states(4, 5, rng)
    batch = partial_transpose_batch(rho, shape)
    for r, t in zip(rho, batch):
        np.testing.assert_allclose(t, partial_transpose(HermitianOp(r, shape)).entries)


@pytest.mark.parametrize("D", [2, 3, 4])
def test_bell_state_is_not_ppt(D):
    verdict = is_ppt(bell_state(D))
    assert not verdict
    assert verdict.min_eigenvalue == pytest.approx(-1 / D)


def test_product_and_mixed_states_are_ppt(stream):
    a = sample_density_uniform(FactorShape(2), stream.child(0))
    b = sample_density_uniform(FactorShape(2), stream.child(1))
    assert is_ppt(DensityMatrix(tensor(a.op, b.op)))
    assert is_ppt(HermitianOp.identity(FactorShape(3, 2)) / 9)


@pytest.mark.parametrize("D", [2, 3])
def test_werner_threshold(D):
    assert werner_ppt_threshold(D) == pytest.approx(1 / (D + 1), abs=1e-9)
    assert is_ppt(werner_state(D, 0.99 / (D + 1)))
    assert not is_ppt(werner_state(D, 1.01 / (D + 1)))
    with pytest.raises(ValueError):
        werner_state(D, 1.5)


def test_ppt_fraction_two_qubits():
    estimate = ppt_fraction_mc(FactorShape(2, 2), 20_000, SeededStream(1))
    assert estimate.ci_low <= 8 / 33 <= estimate.ci_high
    assert estimate.samples == 20_000


def test_ppt_fraction_is_worker_independent():
    shape = FactorShape(2, 2)
    a = ppt_fraction_mc(shape, 5000, SeededStream(2), n_workers=1)
    b = ppt_fraction_mc(shape, 5000, SeededStream(2), n_workers=4)
    assert a.hits == b.hits


@pytest.mark.slow
@pytest.mark.parametrize("D,value", [(2, 8 / 33), (3, None)])
def test_ppt_fraction_large_sample(D, value):
    estimate = ppt_fraction_mc(FactorShape(D, 2), 100_000, SeededStream(10 + D))
    if value is not None:
        assert estimate.ci_low <= value <= estimate.ci_high
    assert estimate.root(D**4 - 1) >= CONSTANTS.c0


def test_ppt_fraction_qutrits():
    estimate = ppt_fraction_mc(FactorShape(3, 2), 1000, SeededStream(3))
    assert estimate.ci_low <= estimate.fraction <= estimate.ci_high
    # any single hit in 1000 already gives a root above 0.9
    assert (estimate.root(80) >= CONSTANTS.c0) == (estimate.hits > 0)


@pytest.mark.parametrize("shape", [FactorShape(2, 3), FactorShape(5, 2), FactorShape(4)])
def test_ppt_fraction_shape_check(shape):
    with pytest.raises(ValueError):
        ppt_fraction_mc(shape, 10)


def test_width_chain_qubits():
    record = theorem4_chain(FactorShape(2, 2), samples=4000, stream=SeededStream(4))
    assert record.n == 15
    assert record.checks.ratio_at_most_8
    assert record.checks.c0_lower_bound
    assert record.fraction_root == pytest.approx(record.fraction.fraction ** (1 / 15))
    assert record.fraction_root <= record.fraction_root_ci_high
    assert record.passed == all(record.checks.values())
    assert record.width_D.samples == 4000


def test_width_chain_accepts_estimates():
    shape = FactorShape(2, 2)
    fraction = ppt_fraction_mc(shape, 2000, SeededStream(5))
    record = theorem4_chain(shape, fraction=fraction, samples=2000, stream=SeededStream(6))
    assert record.fraction.hits == fraction.hits
    with pytest.raises(ValueError):
        theorem4_chain(FactorShape(2, 3), samples=10)


def test_width_chain_judges_the_point_estimate():
    shape = FactorShape(2, 2)
    # no hits: the Wilson upper end clears c0, the point estimate does not
    fraction = wilson_estimate(0, 100, seed=0)
    record = theorem4_chain(shape, fraction=fraction, samples=500, stream=SeededStream(7))
    assert record.fraction_root_ci_high >= CONSTANTS.c0
    assert record.fraction_root == 0
    assert not record.checks.c0_lower_bound
    assert not record.checks.fraction_consistent
    assert not record.passed


def test_width_chain_rejects_wrong_width_estimates(stream):
    shape = FactorShape(2, 2)
    width = gaussian_width_mc(oracle_D(shape, centered=True), 500, stream)
    record = theorem4_chain(shape, width_D=width, samples=500, stream=stream.child(1))
    assert record.width_D == width

    lower = WidthEstimate(1.0, 0.1, 10, 0, "Sigma", True, exactness="lower_bound", dim=15)
    with pytest.raises(TypeError):
        theorem4_chain(shape, width_D=lower, samples=10)
    with pytest.raises(ValueError):
        theorem4_chain(shape, width_D=width.spherical(), samples=10)
    with pytest.raises(ValueError):
        theorem4_chain(shape, width_D=WidthEstimate(1.0, 0.1, 10, 0, "Delta", True, dim=15), samples=10)
    with pytest.raises(ValueError):
        theorem4_chain(shape, width_D=WidthEstimate(1.0, 0.1, 10, 0, "D", True, dim=16), samples=10)
