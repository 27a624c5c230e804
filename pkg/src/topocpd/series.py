"""Core time series containers, normalization, and sliding windows.

A series of length T with dimension d is stored as a (T, d) float array.
Univariate input may be given as a flat sequence; it is reshaped to (T, 1).
Observation indices are 1-based throughout the public API: observation t of
a series occupies row t - 1 of the value array.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidInputError


def _as_value_matrix(values) -> np.ndarray:
    arr = np.asarray(values, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise InvalidInputError(
            f"series values must be 1-d or 2-d, got ndim={arr.ndim}"
        )
    if arr.shape[0] == 0:
        raise InvalidInputError("series must contain at least one observation")
    if arr.shape[1] == 0:
        raise InvalidInputError("series must have at least one coordinate")
    if not np.isfinite(arr).all():
        raise InvalidInputError("series values must be finite (no NaN or inf)")
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Immutable real-valued time series.

    Parameters
    ----------
    values : array-like
        Observations, shape (T,) or (T, d). Stored as a read-only
        (T, d) float64 array.
    """

    values: np.ndarray

    def __post_init__(self):
        arr = _as_value_matrix(self.values).copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    @property
    def dimension(self) -> int:
        return self.values.shape[1]

    def univariate_values(self) -> np.ndarray:
        """Return the single coordinate as a flat array; error if d > 1."""
        if self.dimension != 1:
            raise InvalidInputError(
                f"series has dimension {self.dimension}, expected univariate"
            )
        return self.values[:, 0]


@dataclass(frozen=True)
class WindowConfig:
    """Sliding window setup: width ``w``, stride fixed at 1."""

    width: int

    def __post_init__(self):
        if self.width < 2:
            raise InvalidInputError(f"window width must be >= 2, got {self.width}")


@dataclass(frozen=True)
class PointCloud:
    """A window of w consecutive observations viewed as points in R^d.

    ``origin_index`` is the 1-based position of the first observation of
    the window in the source series.
    """

    points: np.ndarray
    origin_index: int = 1

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=np.float64)
        if pts.ndim == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[0] == 0:
            raise InvalidInputError("point cloud must be a nonempty (w, d) array")
        if not np.isfinite(pts).all():
            raise InvalidInputError("point cloud values must be finite")
        if self.origin_index < 1:
            raise InvalidInputError("origin_index is 1-based and must be >= 1")
        if not pts.flags.writeable:
            object.__setattr__(self, "points", pts)
        else:
            pts = pts.copy()
            pts.setflags(write=False)
            object.__setattr__(self, "points", pts)

    @property
    def size(self) -> int:
        return self.points.shape[0]


def normalize(series: TimeSeries) -> TimeSeries:
    """Rescale every coordinate of a series to the interval [-1/2, 1/2].

    Coordinate j is mapped through
    ``(y - min_j) / (max_j - min_j) - 1/2`` where the minimum and maximum
    are taken over the whole series.  A constant coordinate is mapped to
    identically zero rather than raising.

    Parameters
    ----------
    series : TimeSeries
        Input series, any dimension.

    Returns
    -------
    TimeSeries
        Normalized series of the same shape.  The map is idempotent and
        invariant to per-coordinate affine changes y -> a*y + b with a > 0.
    """
    x = series.values
    lo = x.min(axis=0)
    hi = x.max(axis=0)
    span = hi - lo
    out = np.zeros_like(x)
    live = span > 0
    if live.any():
        out[:, live] = (x[:, live] - lo[live]) / span[live] - 0.5
    return TimeSeries(out)


def sliding_windows(series: TimeSeries, config: WindowConfig) -> list[PointCloud]:
    """Cut a series into overlapping windows of width w, stride 1.

    Window t (1-based) contains observations t .. t+w-1, so a series of
    length T yields exactly T - w + 1 clouds.

    Raises
    ------
    InvalidInputError
        If w < 2 or w > T.
    """
    w = config.width
    T = series.length
    if w > T:
        raise InvalidInputError(
            f"window width {w} exceeds series length {T}"
        )
    vals = series.values
    # views into the read-only backing array, no copies
    return [PointCloud(vals[t : t + w], origin_index=t + 1) for t in range(T - w + 1)]
