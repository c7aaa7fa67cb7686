import sys
from typing import Iterable, Literal, Optional, Sized

from rich.console import Console
from rich.progress import track as rich_track
from tqdm import tqdm

from sepvol import settings

_STYLES = ("rich", "tqdm")


def track(
    sequence: Iterable,
    description: str = "Sampling...",
    disable: bool = False,
    style: Optional[Literal["rich", "tqdm"]] = None,
    unit: str = "chunk",
    **kwargs,
):
    """
    Progress bar over Monte Carlo chunks.

    Bars go to stderr, so JSON reports written to stdout stay parseable. A
    sequence with a single element is returned unwrapped.

    Parameters
    ----------
    sequence
        Chunks, futures or any iterable.
    description
        Label shown left of the bar.
    disable
        Return ``sequence`` itself, without a bar.
    style
        ``"rich"`` (transient) or ``"tqdm"``. If `None`, uses
        ``sepvol.settings.progress_bar_style``.
    unit
        Unit name shown by tqdm.
    **kwargs
        Keyword args to :func:`tqdm.tqdm` or :func:`rich.progress.track`.

    Examples
    --------
    >>> from sepvol.utils import track
    >>> for chunk in track(range(4), description="Widths"): ...
    """
    style = settings.progress_bar_style if style is None else style
    if style not in _STYLES:
        raise ValueError(f"style must be one of {list(_STYLES)}, got {style!r}.")
    total = len(sequence) if isinstance(sequence, Sized) else None
    if disable or total == 1:
        return sequence
    if style == "tqdm":
        return tqdm(sequence, desc=description, total=total, unit=unit, file=sys.stderr, **kwargs)
    return rich_track(
        sequence,
        description=description,
        total=total,
        console=Console(stderr=True),
        transient=True,
        **kwargs,
    )
