from ._checkrecord import CheckRecord
from ._docstrings import mc_dsp
from ._parallel import chunk_sizes, map_streams
from ._track import track

__all__ = ["track", "mc_dsp", "CheckRecord", "map_streams", "chunk_sizes"]
