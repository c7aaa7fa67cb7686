from typing import Callable, Sequence, Union

import numpy as np

Number = Union[int, float]
ArrayLike = Union[np.ndarray, Sequence[complex], Sequence[Sequence[complex]]]
# a probe is either a HermitianOp or a flat real vector
Probe = Union["HermitianOp", np.ndarray]  # noqa: F821
SupportFn = Callable[[Probe], float]
