import logging

import pytest

import sepvol
from sepvol import settings


_NAMES = (
    "seed",
    "progress_bar_style",
    "n_workers",
    "mc_samples",
    "n_starts",
    "n_sweeps",
    "sweep_tol",
    "verbosity",
)


@pytest.fixture
def restore():
    saved = {name: getattr(settings, name) for name in _NAMES}
    yield
    for name, value in saved.items():
        setattr(settings, name, value)


@pytest.mark.parametrize(
    "name,value",
    [
        ("seed", -1),
        ("progress_bar_style", "ascii"),
        ("n_workers", 0),
        ("mc_samples", 1),
        ("n_starts", 0),
        ("n_sweeps", 0),
        ("sweep_tol", -1e-3),
    ],
)
def test_settings_validation(name, value, restore):
    with pytest.raises(ValueError):
        setattr(settings, name, value)


def test_settings_values(restore):
    settings.mc_samples = 500
    settings.n_starts = 4
    assert settings.mc_samples == 500 and settings.n_starts == 4
    settings.verbosity = logging.DEBUG
    assert logging.getLogger("sepvol").level == logging.DEBUG


def test_logging_handler(restore):
    settings.reset_logging_handler()
    handlers = logging.getLogger("sepvol").handlers
    assert len(handlers) == 1
    assert not logging.getLogger("sepvol").propagate


def test_version():
    assert isinstance(sepvol.__version__, str)
