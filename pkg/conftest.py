import numpy as np
import pytest

from sepvol.sampling import SeededStream


def pytest_addoption(parser):
    parser.addoption(
        "--slow-tests",
        action="store_true",
        default=False,
        help="Run full-size Monte Carlo and net tests. This increases test time.",
    )


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-size experiment, needs --slow-tests")


def pytest_collection_modifyitems(config, items):
    run_slow = config.getoption("--slow-tests")
    skip_slow = pytest.mark.skip(reason="need --slow-tests option to run")
    for item in items:
        # All tests marked with `pytest.mark.slow` get skipped unless
        # `--slow-tests` passed
        if not run_slow and ("slow" in item.keywords):
            item.add_marker(skip_slow)


@pytest.fixture
def stream():
    return SeededStream(2022)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
