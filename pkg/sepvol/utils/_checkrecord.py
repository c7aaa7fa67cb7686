import json
import math
from copy import deepcopy

import numpy as np


def _to_builtin(value):
    if isinstance(value, dict):
        return {str(k): _to_builtin(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_to_builtin(v) for v in value]
    if isinstance(value, np.ndarray):
        return _to_builtin(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, (float, np.floating)):
        # JSON has no NaN or infinity
        return float(value) if math.isfinite(value) else None
    if isinstance(value, (complex, np.complexfloating)):
        return {"re": _to_builtin(value.real), "im": _to_builtin(value.imag)}
    if hasattr(value, "to_dict"):
        return _to_builtin(value.to_dict())
    return value


class CheckRecord(dict):
    """
    Result of a numerical check, with attribute access (e.g. ``rec.passed``).

    Nested dictionaries are converted to :class:`CheckRecord` as well.

    Parameters
    ----------
    passed
        Verdict of the check.
    **kwargs
        Computed quantities, bounds and slacks.
    """

    def __init__(self, *args, **kwargs):
        def from_nested_dict(data):
            if not isinstance(data, dict) or isinstance(data, CheckRecord):
                return data
            return CheckRecord({key: from_nested_dict(data[key]) for key in data})

        super().__init__(*args, **kwargs)
        for key in self.keys():
            if hasattr(dict, key):
                raise ValueError(
                    f"Cannot create CheckRecord containing key {key} due to conflict with built-in dict attribute."
                )
            self[key] = from_nested_dict(deepcopy(self[key]))
        self.__dict__ = self

    def to_builtin(self) -> dict:
        """Plain nested dicts and lists with Python scalars; non-finite floats become `None`."""
        return _to_builtin(dict(self))

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_builtin(), allow_nan=False, **kwargs)

    def __repr__(self) -> str:
        return f"CheckRecord({super().__repr__()})"
