"""Linear embedding of Betti count matrices into a few coordinates.

The rows of a Betti matrix (one count sequence per window) live on a
low-dimensional structure; projecting them onto the leading principal
components of their sample covariance yields a derived multivariate
series on which standard change point detectors run.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .series import TimeSeries, WindowConfig, normalize, sliding_windows
from .topology import BettiMatrix, ScaleGrid, betti_matrix

# eigenvalues below this fraction of the covariance trace count as zero
RANK_TOLERANCE = 1e-12


@dataclass(frozen=True)
class PcaModel:
    """Principal component model fitted to Betti matrix rows.

    Attributes
    ----------
    mean : np.ndarray
        Column means of the training matrix, shape (n,).
    components : np.ndarray
        Orthonormal rows, shape (m, n), ordered by decreasing explained
        variance.  Within each component the entry of largest absolute
        value is positive (ties broken by lowest index), which pins the
        sign deterministically.
    explained_variance : np.ndarray
        Covariance eigenvalues of the retained components, shape (m,).
    rank : int
        Number of covariance eigenvalues above ``RANK_TOLERANCE`` times
        the trace.
    rank_deficient : bool
        True when m exceeds ``rank``; trailing components then carry
        (numerically) zero variance and scores on them are ~0.
    """

    mean: np.ndarray
    components: np.ndarray
    explained_variance: np.ndarray
    rank: int
    rank_deficient: bool


@dataclass(frozen=True)
class DerivedSeries:
    """Projected window signatures: one m-dimensional point per window.

    Carries the parameters that produced it so downstream reports can
    echo full provenance.
    """

    values: np.ndarray
    window: int
    grid: ScaleGrid
    pca_dim: int

    def __post_init__(self):
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 2:
            raise InvalidInputError("derived series values must be 2-d")
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def length(self) -> int:
        return self.values.shape[0]

    def to_time_series(self) -> TimeSeries:
        return TimeSeries(self.values)


def _fix_signs(components: np.ndarray) -> np.ndarray:
    out = components.copy()
    for i in range(out.shape[0]):
        j = int(np.argmax(np.abs(out[i])))  # first maximum wins ties
        if out[i, j] < 0:
            out[i] = -out[i]
    return out


def pca_fit(matrix: BettiMatrix | np.ndarray, m: int) -> PcaModel:
    """Fit an m-component covariance PCA to the rows of a Betti matrix.

    The covariance is the sample covariance of the rows (columns
    centered, normalized by N - 1).  Requesting more components than the
    covariance rank is allowed: the extra components span the null space,
    their explained variance is reported as 0, and ``rank_deficient`` is
    set alongside a warning.

    Parameters
    ----------
    matrix : BettiMatrix or array-like
        Training rows, shape (N, n).
    m : int
        Number of components, 1 <= m <= min(n, N).

    Returns
    -------
    PcaModel
    """
    X = matrix.counts if isinstance(matrix, BettiMatrix) else np.asarray(matrix)
    X = X.astype(np.float64)
    if X.ndim != 2 or X.shape[0] == 0:
        raise InvalidInputError("PCA input must be a nonempty 2-d matrix")
    N, n = X.shape
    if not 1 <= m <= min(n, N):
        raise InvalidInputError(
            f"need 1 <= m <= min(n={n}, N={N}), got m={m}"
        )
    mean = X.mean(axis=0)
    centered = X - mean
    if N > 1:
        cov = centered.T @ centered / (N - 1)
    else:
        cov = np.zeros((n, n))
    evals, evecs = np.linalg.eigh(cov)
    evals = evals[::-1]
    evecs = evecs[:, ::-1]
    trace = float(np.sum(np.clip(evals, 0.0, None)))
    rank = int(np.sum(evals > RANK_TOLERANCE * trace)) if trace > 0 else 0
    components = _fix_signs(evecs[:, :m].T)
    explained = np.clip(evals[:m], 0.0, None)
    deficient = rank < m
    if deficient:
        warnings.warn(
            f"requested {m} components but covariance rank is {rank}; "
            "trailing components carry zero variance",
            stacklevel=2,
        )
        explained = explained.copy()
        explained[rank:] = 0.0
    return PcaModel(
        mean=mean,
        components=components,
        explained_variance=explained,
        rank=rank,
        rank_deficient=deficient,
    )


def pca_transform(model: PcaModel, matrix: BettiMatrix | np.ndarray) -> np.ndarray:
    """Project rows onto the fitted components.

    Rows are centered with the model mean, then multiplied by the
    component matrix; output has shape (N, m).
    """
    X = matrix.counts if isinstance(matrix, BettiMatrix) else np.asarray(matrix)
    X = X.astype(np.float64)
    if X.ndim != 2 or X.shape[1] != model.mean.size:
        raise InvalidInputError(
            f"matrix has {X.shape[1] if X.ndim == 2 else '?'} columns, "
            f"model expects {model.mean.size}"
        )
    return (X - model.mean) @ model.components.T


def tda_pipeline(
    series: TimeSeries,
    window: int,
    grid: ScaleGrid | None = None,
    pca_dim: int = 3,
) -> tuple[BettiMatrix, PcaModel, DerivedSeries]:
    """Run the full window-signature chain, returning the intermediates.

    Same computation as ``tda_transform`` (which is a thin wrapper); the
    Betti matrix and fitted model are handed back for reporting.
    """
    if grid is None:
        grid = ScaleGrid.default()
    clouds = sliding_windows(normalize(series), WindowConfig(window))
    if pca_dim < 1 or pca_dim > min(grid.size, len(clouds)):
        raise InvalidInputError(
            f"need 1 <= pca_dim <= min(grid size {grid.size}, "
            f"window count {len(clouds)}), got {pca_dim}"
        )
    bm = betti_matrix(clouds, grid)
    model = pca_fit(bm, pca_dim)
    scores = pca_transform(model, bm)
    derived = DerivedSeries(scores, window=window, grid=grid, pca_dim=pca_dim)
    return bm, model, derived


def tda_transform(
    series: TimeSeries,
    window: int,
    grid: ScaleGrid | None = None,
    pca_dim: int = 3,
) -> DerivedSeries:
    """Turn a series into the derived series of projected window signatures.

    Chain: normalize the series per coordinate into [-1/2, 1/2], slide a
    width-w window with stride 1, count connected components of every
    window over the scale grid, fit covariance PCA to the resulting count
    matrix, and project.  Derived point t summarizes observations
    t .. t+w-1, so indices map back to the source series additively with
    no window-center shift.

    Parameters
    ----------
    series : TimeSeries
        Input series, any dimension.
    window : int
        Window width w, 2 <= w <= T.
    grid : ScaleGrid, optional
        Scales to evaluate; defaults to 0.00 .. 0.49 in steps of 0.01.
    pca_dim : int
        Number of retained coordinates m.

    Returns
    -------
    DerivedSeries
        Shape (T - w + 1, m).  Invariant (up to float noise) under
        per-coordinate affine rescaling of the input.
    """
    return tda_pipeline(series, window, grid, pca_dim)[2]
