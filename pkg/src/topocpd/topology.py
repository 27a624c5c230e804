"""Degree-zero topology of point clouds over a grid of scales.

For a cloud of w points and a scale eps, build the graph with an edge
between every pair at Euclidean distance <= eps (closed threshold).  The
number of connected components of that graph is the count of degree-zero
features of the Vietoris-Rips complex at scale eps, which is all this
package needs: higher-degree features are out of scope.

The count is evaluated on an increasing grid of scales with a single
sorted sweep: the distances at which two components merge are exactly the
single-linkage merge heights, so counts at every scale follow from one
union-find pass in O(w^2 log w + n) per cloud.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .series import PointCloud

DEFAULT_GRID_SIZE = 50
DEFAULT_GRID_STEP = 0.01


@dataclass(frozen=True)
class ScaleGrid:
    """Strictly increasing grid of nonnegative scales."""

    scales: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.scales, dtype=np.float64)
        if arr.ndim != 1 or arr.size == 0:
            raise InvalidInputError("scale grid must be a nonempty 1-d array")
        if not np.isfinite(arr).all():
            raise InvalidInputError("scale grid values must be finite")
        if arr[0] < 0:
            raise InvalidInputError("scales must be nonnegative")
        if arr.size > 1 and not (np.diff(arr) > 0).all():
            raise InvalidInputError("scale grid must be strictly increasing")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "scales", arr)

    @property
    def size(self) -> int:
        return self.scales.size

    @classmethod
    def default(cls) -> "ScaleGrid":
        """Fifty scales 0.00, 0.01, ..., 0.49, matched to series
        normalized into [-1/2, 1/2]."""
        return cls(DEFAULT_GRID_STEP * np.arange(DEFAULT_GRID_SIZE))

    @classmethod
    def uniform(cls, size: int, step: float) -> "ScaleGrid":
        return cls(step * np.arange(size))


@dataclass(frozen=True)
class BettiSequence:
    """Component counts of one cloud along a scale grid.

    ``counts[i]`` is the number of connected components at ``grid.scales[i]``.
    Counts are integers in [1, w] and non-increasing in the scale.
    """

    counts: np.ndarray
    window_origin: int = 1

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)


@dataclass(frozen=True)
class BettiMatrix:
    """Stacked Betti sequences of consecutive windows over one shared grid.

    Row t corresponds to the window with origin t+1; column i to
    ``grid.scales[i]``.
    """

    counts: np.ndarray
    grid: ScaleGrid
    window_size: int

    def __post_init__(self):
        arr = np.asarray(self.counts, dtype=np.int64)
        if arr.ndim != 2:
            raise InvalidInputError("Betti matrix must be 2-d")
        if arr.shape[1] != self.grid.size:
            raise InvalidInputError(
                f"matrix has {arr.shape[1]} columns but grid has {self.grid.size} scales"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "counts", arr)

    @property
    def n_windows(self) -> int:
        return self.counts.shape[0]

    def row(self, i: int) -> BettiSequence:
        return BettiSequence(self.counts[i], window_origin=i + 1)


def _merge_heights(points: np.ndarray) -> np.ndarray:
    """Sorted distances at which the component count of the threshold
    graph drops, computed by a union-find sweep over sorted edges.

    Returns w - 1 values for a cloud of w points.
    """
    w = points.shape[0]
    if w == 1:
        return np.empty(0)
    diff = points[:, None, :] - points[None, :, :]
    dist = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
    iu, ju = np.triu_indices(w, k=1)
    flat = dist[iu, ju]
    order = np.argsort(flat, kind="stable")

    parent = list(range(w))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]  # path halving
            a = parent[a]
        return a

    heights = np.empty(w - 1)
    merged = 0
    for e in order:
        ra, rb = find(int(iu[e])), find(int(ju[e]))
        if ra == rb:
            continue
        parent[rb] = ra
        heights[merged] = flat[e]
        merged += 1
        if merged == w - 1:
            break
    return heights


def betti0_sequence(cloud: PointCloud, grid: ScaleGrid) -> BettiSequence:
    """Count connected components of a cloud at every scale of a grid.

    An edge joins two points when their Euclidean distance is <= eps
    (closed threshold), so coincident points merge already at eps = 0.

    Parameters
    ----------
    cloud : PointCloud
        Nonempty window of points.
    grid : ScaleGrid
        Strictly increasing scales.

    Returns
    -------
    BettiSequence
        One count per scale; non-increasing, each in [1, w].  Invariant
        under translation and orthogonal rotation of the cloud.
    """
    heights = _merge_heights(cloud.points)
    w = cloud.size
    merged_by = np.searchsorted(heights, grid.scales, side="right")
    counts = w - merged_by
    return BettiSequence(counts, window_origin=cloud.origin_index)


def betti_matrix(clouds: list[PointCloud], grid: ScaleGrid) -> BettiMatrix:
    """Stack the Betti sequences of a list of equal-width clouds.

    Rows are independent of each other; the loop is sequential but the
    result does not depend on evaluation order.

    Raises
    ------
    InvalidInputError
        If the list is empty or the clouds disagree in width.
    """
    if not clouds:
        raise InvalidInputError("need at least one point cloud")
    w = clouds[0].size
    for c in clouds:
        if c.size != w:
            raise InvalidInputError(
                f"inconsistent window sizes: {c.size} != {w}"
            )
    rows = np.empty((len(clouds), grid.size), dtype=np.int64)
    for i, c in enumerate(clouds):
        rows[i] = betti0_sequence(c, grid).counts
    return BettiMatrix(rows, grid=grid, window_size=w)
