import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal, Optional, Union

import numpy as np
from scipy.spatial import cKDTree

from sepvol._constants import TOLERANCES
from sepvol.sampling import as_stream

logger = logging.getLogger(__name__)

Construction = Literal["greedy_random", "explicit"]

# dim_real: u32, count: u32
_HEADER = np.dtype([("dim_real", "<u4"), ("count", "<u4")])
VALIDATION_PROBES = 10_000


@dataclass(frozen=True, eq=False)
class SphereNet:
    """
    Finite ``δ``-net of the unit sphere of ``ℝ^dim_real``.

    The sphere of ``ℂᴰ`` is the sphere of ``ℝ^{2D}`` through
    ``x ↦ (Re x, Im x)``.

    Parameters
    ----------
    dim_real
        Real dimension of the ambient space.
    delta
        Covering radius the net was built or validated for.
    points
        Unit vectors, shape ``(count, dim_real)``.
    construction
        ``"greedy_random"`` for :func:`build_net` output, ``"explicit"`` otherwise.
    """

    dim_real: int
    delta: float
    points: np.ndarray
    construction: Construction = "greedy_random"

    def __post_init__(self):
        points = np.ascontiguousarray(self.points, dtype=np.float64)
        if points.ndim != 2 or points.shape[1] != self.dim_real:
            raise ValueError(
                f"Net points must have shape (count, {self.dim_real}), got {points.shape}."
            )
        gap = np.abs(np.linalg.norm(points, axis=1) - 1)
        if gap.size and gap.max() > TOLERANCES.UNIT_NORM:
            raise ValueError(f"Net points must be unit vectors, worst norm gap {gap.max():.2e}.")
        points.setflags(write=False)
        object.__setattr__(self, "points", points)

    def __len__(self) -> int:
        return self.points.shape[0]

    @property
    def is_complex(self) -> bool:
        return self.dim_real % 2 == 0

    @property
    def D(self) -> int:
        """Complex dimension, for nets of even real dimension."""
        if not self.is_complex:
            raise ValueError(f"A net of odd real dimension {self.dim_real} is not a complex net.")
        return self.dim_real // 2

    def complex_points(self) -> np.ndarray:
        """Net points as vectors of ``ℂᴰ``, shape ``(count, D)``."""
        D = self.D
        return self.points[:, :D] + 1j * self.points[:, D:]


def _sphere(dim: int, size: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal((size, dim))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _greedy_insert(points: List[np.ndarray], tree, candidates: np.ndarray, delta: float):
    """Accept candidates farther than ``delta`` from the packing, in order; returns accepted mask."""
    if tree is not None:
        dist, _ = tree.query(candidates, k=1)
        free = dist > delta
    else:
        free = np.ones(len(candidates), dtype=bool)
    accepted = np.zeros(len(candidates), dtype=bool)
    if not free.any():
        return accepted
    idx = np.flatnonzero(free)
    conflicts = cKDTree(candidates[idx]).query_pairs(delta, output_type="ndarray")
    blocked_by = [[] for _ in idx]
    for a, b in conflicts:
        blocked_by[max(a, b)].append(min(a, b))
    for j, i in enumerate(idx):
        if not any(accepted[idx[k]] for k in blocked_by[j]):
            accepted[i] = True
            points.append(candidates[i])
    return accepted


def build_net(
    dim_real: int,
    delta: float,
    stream=None,
    patience: int = VALIDATION_PROBES,
    batch_size: int = 1024,
    n_probes: int = VALIDATION_PROBES,
) -> SphereNet:
    """
    Greedy random ``δ``-packing of the unit sphere of ``ℝ^dim_real``, validated as a ``δ``-net.

    Random sphere points are inserted unless they lie within ``delta`` of an
    existing point, until ``patience`` consecutive candidates are rejected. A
    maximal ``δ``-packing is a ``δ``-net; maximality is then validated on
    ``n_probes`` random probes, and uncovered probes are inserted until a whole
    batch of probes is covered.

    Parameters
    ----------
    dim_real
        Real dimension, ``2D`` for the sphere of ``ℂᴰ``.
    delta
        Covering radius, ``0 < delta < 2``.
    stream
        Candidates come from ``stream.child(0)``, validation round ``r`` from
        ``stream.child(r + 1)``.
    patience
        Consecutive rejections ending the packing phase.
    batch_size
        Candidates drawn per batch.
    n_probes
        Probes per validation round.

    Examples
    --------
    >>> net = build_net(4, 0.5, SeededStream(0))
    >>> covering_radius(net, stream=SeededStream(1)) <= 0.5
    True
    """
    if not 0 < delta < 2:
        raise ValueError(f"delta must lie in (0, 2), got {delta}.")
    if dim_real < 1:
        raise ValueError(f"dim_real must be positive, got {dim_real}.")
    stream = as_stream(stream)
    rng = stream.child(0).generator()
    points: List[np.ndarray] = []
    tree = None
    rejections = 0
    while rejections < patience:
        candidates = _sphere(dim_real, batch_size, rng)
        accepted = _greedy_insert(points, tree, candidates, delta)
        hits = np.flatnonzero(accepted)
        if hits.size:
            rejections = batch_size - 1 - hits[-1]
            tree = cKDTree(np.array(points))
        else:
            rejections += batch_size
    logger.info(f"Packing phase: {len(points)} points in dimension {dim_real} at delta={delta}.")

    round_ = 0
    while True:
        probes = _sphere(dim_real, n_probes, stream.child(round_ + 1).generator())
        dist, _ = tree.query(probes, k=1)
        uncovered = probes[dist > delta]
        if not len(uncovered):
            break
        logger.warning(
            f"Covering radius {dist.max():.4f} above delta={delta} in validation round "
            f"{round_}; inserting {len(uncovered)} uncovered probes."
        )
        _greedy_insert(points, tree, uncovered, delta)
        tree = cKDTree(np.array(points))
        round_ += 1
    logger.info(f"Validated net of {len(points)} points after {round_ + 1} rounds.")
    return SphereNet(dim_real, float(delta), np.array(points), "greedy_random")


def covering_radius(net: SphereNet, probes: int = VALIDATION_PROBES, stream=None) -> float:
    """Largest distance from ``probes`` random sphere points to their nearest net point."""
    rng = as_stream(stream).generator()
    dist, _ = cKDTree(net.points).query(_sphere(net.dim_real, probes, rng), k=1)
    return float(dist.max())


def save_net(net: SphereNet, path: Union[str, Path]):
    """
    Write ``net`` as little-endian binary: ``u32`` dimension, ``u32`` count, then ``float64`` coordinates.
    """
    header = np.array([(net.dim_real, len(net))], dtype=_HEADER)
    with open(path, "wb") as f:
        f.write(header.tobytes())
        f.write(net.points.astype("<f8").tobytes())
    logger.info(f"Saved net of {len(net)} points to {path}.")


def load_net(
    path: Union[str, Path], delta: float, construction: Optional[Construction] = None
) -> SphereNet:
    """Read a net written by :func:`save_net`; ``delta`` is not stored in the file."""
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.itemsize:
        raise ValueError(f"{path} is too short to hold a net header.")
    header = np.frombuffer(raw[: _HEADER.itemsize], dtype=_HEADER)[0]
    dim_real, count = int(header["dim_real"]), int(header["count"])
    body = raw[_HEADER.itemsize :]
    if len(body) != 8 * dim_real * count:
        raise ValueError(
            f"{path} holds {len(body)} bytes of coordinates, expected {8 * dim_real * count}."
        )
    points = np.frombuffer(body, dtype="<f8").reshape(count, dim_real)
    return SphereNet(dim_real, float(delta), points, construction or "greedy_random")
