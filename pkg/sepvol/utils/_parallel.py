import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, List, Optional, TypeVar

from sepvol import settings

from ._track import track

logger = logging.getLogger(__name__)

T = TypeVar("T")

# probes per chunk; a function of the sample count only
CHUNK_SIZE = 2048


def chunk_sizes(samples: int, chunk_size: int = CHUNK_SIZE) -> List[int]:
    """Split ``samples`` into consecutive chunk sizes."""
    if samples < 1:
        raise ValueError(f"samples must be positive, got {samples}.")
    full, rest = divmod(samples, chunk_size)
    return [chunk_size] * full + ([rest] if rest else [])


def map_streams(
    fn: Callable[[int, "SeededStream"], T],  # noqa: F821
    n_chunks: int,
    stream,
    n_workers: Optional[int] = None,
    silent: bool = True,
    description: str = "Sampling...",
) -> List[T]:
    """
    Evaluate ``fn(i, stream.child(i))`` for every chunk ``i``, preserving order.

    Parameters
    ----------
    fn
        Function of the chunk index and its child stream.
    n_chunks
        Number of chunks.
    stream
        Parent :class:`~sepvol.sampling.SeededStream`.
    n_workers
        Thread count. If `None`, uses ``sepvol.settings.n_workers``.
    silent
        If True, disables the progress bar.
    description
        Progress bar label.
    """
    n_workers = settings.n_workers if n_workers is None else n_workers
    if n_workers < 1:
        raise ValueError(f"n_workers must be at least 1, got {n_workers}.")
    children = [stream.child(i) for i in range(n_chunks)]
    if n_workers == 1 or n_chunks == 1:
        return [
            fn(i, child)
            for i, child in track(
                list(enumerate(children)),
                description=description,
                disable=silent,
            )
        ]
    logger.debug(f"Spreading {n_chunks} chunks over {n_workers} threads.")
    with ThreadPoolExecutor(max_workers=n_workers) as pool:
        futures = [pool.submit(fn, i, child) for i, child in enumerate(children)]
        return [
            f.result()
            for f in track(futures, description=description, disable=silent)
        ]
