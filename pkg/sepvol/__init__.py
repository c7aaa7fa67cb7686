"""sepvol."""

# Set default logging handler to avoid logging with logging.lastResort logger.
import importlib.metadata as importlib_metadata
import logging

from ._constants import CONSTANTS, TOLERANCES
from ._settings import settings

# this import needs to come after prior imports to prevent circular import
from . import (
    operators,
    sampling,
    bodies,
    widths,
    tensor_norms,
    ellipsoids,
    nets,
    ppt,
    experiments,
    utils,
)

package_name = "sepvol"
__version__ = importlib_metadata.version(package_name)

settings.verbosity = logging.WARNING

sepvol_logger = logging.getLogger("sepvol")
sepvol_logger.propagate = False

__all__ = [
    "settings",
    "CONSTANTS",
    "TOLERANCES",
    "operators",
    "sampling",
    "bodies",
    "widths",
    "tensor_norms",
    "ellipsoids",
    "nets",
    "ppt",
    "experiments",
    "utils",
]
