from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from sepvol import settings

_U64 = 2**64


@dataclass(frozen=True)
class SeededStream:
    """
    Reproducible random stream keyed by ``(seed, stream_index)``.

    Backed by numpy's counter-based Philox generator, so equal keys give
    bit-identical sequences on every platform and distinct keys give
    independent streams.

    Parameters
    ----------
    seed
        64-bit unsigned seed.
    stream_index
        64-bit unsigned stream index.

    Examples
    --------
    >>> stream = SeededStream(2022)
    >>> rng = stream.generator()
    >>> worker_rng = stream.child(3).generator()
    """

    seed: int
    stream_index: int = 0

    def __post_init__(self):
        for name in ("seed", "stream_index"):
            value = int(getattr(self, name))
            if not 0 <= value < _U64:
                raise ValueError(f"{name} must be a 64-bit unsigned integer, got {value}.")
            object.__setattr__(self, name, value)

    @property
    def key(self) -> int:
        """128-bit Philox key."""
        return (self.seed << 64) | self.stream_index

    def generator(self) -> np.random.Generator:
        """Fresh generator positioned at the start of this stream."""
        return np.random.Generator(np.random.Philox(key=self.key))

    def child(self, i: int) -> "SeededStream":
        """Independent sub-stream ``i`` sharing the same seed."""
        index = np.random.SeedSequence([self.seed, self.stream_index, int(i)])
        return SeededStream(self.seed, int(index.generate_state(1, np.uint64)[0]))


StreamLike = Optional[Union[SeededStream, int, np.random.Generator]]


def as_stream(stream: Optional[Union[SeededStream, int]]) -> SeededStream:
    """Coerce ``None`` or an integer seed into a :class:`SeededStream`."""
    if stream is None:
        return SeededStream(settings.seed)
    if isinstance(stream, SeededStream):
        return stream
    if isinstance(stream, (int, np.integer)):
        return SeededStream(int(stream))
    raise TypeError(f"Expected a SeededStream or an integer seed, got {type(stream)}.")


def as_generator(stream: StreamLike) -> np.random.Generator:
    """Generator for ``stream``; an existing generator is passed through."""
    if isinstance(stream, np.random.Generator):
        return stream
    return as_stream(stream).generator()
