from ._transpose import (
    PptVerdict,
    bell_state,
    is_ppt,
    partial_transpose,
    partial_transpose_batch,
    werner_ppt_threshold,
    werner_state,
)
from ._volume import ppt_fraction_mc, theorem4_chain

__all__ = [
    "PptVerdict",
    "partial_transpose",
    "partial_transpose_batch",
    "is_ppt",
    "bell_state",
    "werner_state",
    "werner_ppt_threshold",
    "ppt_fraction_mc",
    "theorem4_chain",
]
