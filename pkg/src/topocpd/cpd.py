"""Nonparametric change point detectors.

Three retrospective detectors over a common convention:

* ``e_divisive``: hierarchical bisection driven by the sample energy
  divergence between candidate segments; handles any dimension and any
  number of change points (known count k).
* ``cvm_single_change``: single change point located by the standardized
  two-sample Cramer-von-Mises statistic; univariate only.
* ``bartlett_single_change``: single variance change located by the
  two-group Bartlett statistic under a normal working model; univariate
  only.

A change point index is the 1-based position of the first observation of
the new regime, in the coordinate system of the series the detector ran
on.  Candidate splits keep at least ``min_segment`` observations on each
side, so for a series of length T the admissible indices are
``min_segment + 1 .. T - min_segment + 1``.  Argmax ties are broken by
the smallest index.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .embedding import DerivedSeries
from .errors import InvalidInputError, UnsupportedError
from .series import TimeSeries

E_DIVISIVE = "e-divisive"
CVM = "cvm"
BARTLETT = "bartlett"
DETECTORS = (E_DIVISIVE, CVM, BARTLETT)


@dataclass(frozen=True)
class EnergyConfig:
    """Parameters of the energy-divergence detector.

    alpha is the exponent on Euclidean distances, in (0, 2); min_segment
    the smallest admissible segment length; k the number of change points
    to return; permutations > 0 attaches a permutation p-value to every
    committed split.  With right_endpoint_scan (the default) a candidate
    split is scored by maximizing Q jointly over the split point and the
    right endpoint of the trailing window, so observations beyond a
    later, not-yet-committed change cannot dilute the comparison; set it
    False to always compare each prefix against the entire remainder.
    """

    alpha: float = 1.0
    min_segment: int = 30
    k: int = 1
    permutations: int = 0
    right_endpoint_scan: bool = True

    def __post_init__(self):
        if not 0.0 < self.alpha < 2.0:
            raise InvalidInputError(f"alpha must be in (0, 2), got {self.alpha}")
        if self.min_segment < 2:
            raise InvalidInputError("min_segment must be >= 2")
        if self.k < 1:
            raise InvalidInputError("k must be >= 1")
        if self.permutations < 0:
            raise InvalidInputError("permutations must be >= 0")


@dataclass(frozen=True)
class DetectionResult:
    """Detector output: indices, their statistics, and provenance."""

    detector: str
    series_kind: str
    change_points: tuple[int, ...]
    statistics: tuple[float, ...]
    p_values: tuple[float, ...] | None = None


def _as_points(series) -> np.ndarray:
    """Coerce a TimeSeries, DerivedSeries, or array to a (T, d) float array."""
    if isinstance(series, TimeSeries):
        return series.values
    if isinstance(series, DerivedSeries):
        return series.values
    arr = np.asarray(series, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] == 0:
        raise InvalidInputError("series must be a nonempty 1-d or 2-d array")
    if not np.isfinite(arr).all():
        raise InvalidInputError("series values must be finite")
    return arr


def _as_univariate(series, message: str | None = None) -> np.ndarray:
    pts = _as_points(series)
    if pts.shape[1] != 1:
        raise UnsupportedError(
            message
            or f"detector applies to univariate series only, got dimension {pts.shape[1]}"
        )
    return pts[:, 0]


def admissible_splits(length: int, min_segment: int) -> range:
    """1-based candidate change indices leaving >= min_segment points per side."""
    return range(min_segment + 1, length - min_segment + 2)


# ---------------------------------------------------------------------------
# energy divergence
# ---------------------------------------------------------------------------

def energy_divergence(x, y, alpha: float = 1.0) -> float:
    """Scaled sample energy divergence Q(X, Y; alpha) between two samples.

    Q = (m n / (m + n)) * E with

    E = (2 / (m n)) sum_ij |x_i - y_j|^a
        - binom(m, 2)^-1 sum_{i<k} |x_i - x_k|^a
        - binom(n, 2)^-1 sum_{j<k} |y_j - y_k|^a

    over Euclidean norms.  A within-sample term over fewer than 2 points
    is defined as 0.  Symmetric in (x, y); the sample statistic may be
    negative even though its population counterpart is nonnegative.

    Parameters
    ----------
    x, y : array-like
        Samples of shape (m, d) and (n, d) (or flat for d = 1).
    alpha : float
        Distance exponent in (0, 2).

    Returns
    -------
    float
    """
    if not 0.0 < alpha < 2.0:
        raise InvalidInputError(f"alpha must be in (0, 2), got {alpha}")
    xp = _as_points(x)
    yp = _as_points(y)
    if xp.shape[1] != yp.shape[1]:
        raise InvalidInputError(
            f"samples differ in dimension: {xp.shape[1]} vs {yp.shape[1]}"
        )
    # canonical argument order makes the float summation identical for
    # (x, y) and (y, x), so symmetry holds exactly, not just to rounding
    if (yp.shape[0], yp.tobytes()) < (xp.shape[0], xp.tobytes()):
        xp, yp = yp, xp
    m, n = xp.shape[0], yp.shape[0]

    def pair_power(a, b):
        diff = a[:, None, :] - b[None, :, :]
        d = np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))
        if alpha != 1.0:
            d = d ** alpha
        return d

    between = 2.0 * pair_power(xp, yp).sum() / (m * n)
    within_x = 0.0
    if m >= 2:
        dx = pair_power(xp, xp)
        within_x = dx.sum() / (m * (m - 1))  # full matrix = 2 * upper triangle
    within_y = 0.0
    if n >= 2:
        dy = pair_power(yp, yp)
        within_y = dy.sum() / (n * (n - 1))
    return m * n / (m + n) * float(between - within_x - within_y)


def _row_cumsums(points: np.ndarray, alpha: float, i: int) -> np.ndarray:
    """cumsum over j of |p_i - p_j|^alpha, length T."""
    d = np.sqrt(((points - points[i]) ** 2).sum(axis=1))
    if alpha != 1.0:
        d = d ** alpha
    return np.cumsum(d)


def _diagonal_pair_sums(points: np.ndarray, alpha: float) -> np.ndarray:
    """G[t] = sum_{i<t, j<t} |p_i - p_j|^alpha for t = 0..T, O(T) memory."""
    T = points.shape[0]
    G = np.empty(T + 1)
    S = np.zeros(T + 1)
    for i in range(T):
        G[i] = S[i]
        S[1:] += _row_cumsums(points, alpha, i)
    G[T] = S[T]
    return G


def _energy_scan(
    points: np.ndarray,
    alpha: float,
    min_segment: int,
    right_endpoint_scan: bool = True,
):
    """Best Q statistic at every admissible prefix size.

    Returns (sizes, q) where sizes[i] observations form the left segment
    (1-based change index sizes[i] + 1) and q[i] is the Q statistic of
    that prefix against its best admissible trailing window, i.e. the max
    over right endpoints kappa >= sizes[i] + min_segment.  Without
    right_endpoint_scan the trailing window is pinned to the series end.
    Ties over kappa resolve to the smallest endpoint.

    Two passes over the rows of the pairwise-distance matrix, never
    materialized: A[t] accumulates sum_{i<tau} cum_i(t) as tau advances,
    which yields every prefix, cross, and trailing-window pair sum.
    """
    T = points.shape[0]
    G = _diagonal_pair_sums(points, alpha)
    sizes = np.arange(min_segment, T - min_segment + 1)
    q = np.full(sizes.size, -np.inf)
    A = np.zeros(T + 1)
    for tau in range(1, T - min_segment + 1):
        A[1:] += _row_cumsums(points, alpha, tau - 1)
        if tau < min_segment:
            continue
        if right_endpoint_scan:
            ks = np.arange(tau + min_segment, T + 1)
        else:
            ks = np.array([T])
        m = float(tau)
        n = (ks - tau).astype(np.float64)
        cross = A[ks] - A[tau]
        within2 = G[ks] - 2.0 * A[ks] + A[tau]
        e = (
            2.0 * cross / (m * n)
            - A[tau] / (m * (m - 1.0))
            - within2 / (n * (n - 1.0))
        )
        qk = m * n / (m + n) * e
        q[tau - min_segment] = qk[int(np.argmax(qk))]
    return sizes, q


def best_single_split(series, config: EnergyConfig = EnergyConfig()):
    """Best energy split of a series: the admissible index maximizing Q.

    Under the default config the score of a candidate index is the Q of
    its prefix against the best trailing window starting there (maximum
    over right endpoints); with ``config.right_endpoint_scan`` False it
    is the Q of prefix against the entire suffix.

    Returns
    -------
    (tau, q) : (int, float)
        1-based change index and the statistic there.  Ties go to the
        smallest index.

    Raises
    ------
    InvalidInputError
        If the series is shorter than 2 * min_segment.
    """
    points = _as_points(series)
    T = points.shape[0]
    if T < 2 * config.min_segment:
        raise InvalidInputError(
            f"series of length {T} admits no split with min_segment={config.min_segment}"
        )
    sizes, q = _energy_scan(
        points, config.alpha, config.min_segment, config.right_endpoint_scan
    )
    best = int(np.argmax(q))  # first maximum
    return int(sizes[best]) + 1, float(q[best])


def _segment_best(points, a, b, config):
    """Best split of points[a:b]; None if the segment admits none."""
    if b - a < 2 * config.min_segment:
        return None
    sizes, q = _energy_scan(
        points[a:b], config.alpha, config.min_segment, config.right_endpoint_scan
    )
    i = int(np.argmax(q))
    return float(q[i]), a + int(sizes[i])  # global 0-based boundary


def e_divisive(
    series,
    config: EnergyConfig = EnergyConfig(),
    seed: int = 0,
    series_kind: str = "raw",
) -> DetectionResult:
    """Detect k change points by hierarchical energy bisection.

    At every step the best split of each current segment is computed
    (scored as in :func:`best_single_split`, honoring the config's
    right-endpoint scan) and the split with the largest Q statistic is
    committed; after k commits the sorted change indices are returned.
    With ``config.permutations`` > 0, each committed split also gets a
    p-value: observations of the split segment are permuted, the segment
    is rescanned, and p is the fraction of permuted maxima >= the
    observed one.

    Raises
    ------
    InvalidInputError
        If the series cannot hold k + 1 segments of min_segment points,
        or the greedy recursion runs out of admissible splits early.
    """
    points = _as_points(series)
    T = points.shape[0]
    if T < (config.k + 1) * config.min_segment:
        raise InvalidInputError(
            f"length {T} cannot hold {config.k + 1} segments of >= "
            f"{config.min_segment} observations"
        )
    rng = np.random.default_rng(seed) if config.permutations > 0 else None

    segments = [(0, T)]
    cache: dict[tuple[int, int], tuple[float, int] | None] = {}
    found: list[tuple[int, float, float | None]] = []

    for _ in range(config.k):
        candidates = []
        for seg in segments:
            if seg not in cache:
                cache[seg] = _segment_best(points, seg[0], seg[1], config)
            if cache[seg] is not None:
                q, boundary = cache[seg]
                candidates.append((q, seg, boundary))
        if not candidates:
            raise InvalidInputError(
                f"no admissible split left after {len(found)} of {config.k} changes"
            )
        # largest Q wins; ties go to the earliest segment, then earliest index
        candidates.sort(key=lambda c: (-c[0], c[1][0], c[2]))
        q, seg, boundary = candidates[0]

        p_value = None
        if rng is not None:
            a, b = seg
            hits = 0
            for _ in range(config.permutations):
                perm = points[a:b][rng.permutation(b - a)]
                _, qs = _energy_scan(
                    perm, config.alpha, config.min_segment, config.right_endpoint_scan
                )
                if qs.max() >= q:
                    hits += 1
            p_value = hits / config.permutations

        segments.remove(seg)
        segments.append((seg[0], boundary))
        segments.append((boundary, seg[1]))
        found.append((boundary + 1, q, p_value))

    found.sort(key=lambda f: f[0])
    return DetectionResult(
        detector=E_DIVISIVE,
        series_kind=series_kind,
        change_points=tuple(f[0] for f in found),
        statistics=tuple(f[1] for f in found),
        p_values=tuple(f[2] for f in found) if rng is not None else None,
    )


# ---------------------------------------------------------------------------
# Cramer-von-Mises
# ---------------------------------------------------------------------------

def cvm_two_sample(x, y) -> float:
    """Two-sample Cramer-von-Mises statistic.

    T = (a b / (a + b)^2) * sum_z (F_a(z) - G_b(z))^2, the sum running
    over every observation of the pooled sample (ties contribute one term
    each) and F_a, G_b being the right-continuous empirical CDFs.
    """
    xv = np.asarray(x, dtype=np.float64).ravel()
    yv = np.asarray(y, dtype=np.float64).ravel()
    a, b = xv.size, yv.size
    if a == 0 or b == 0:
        raise InvalidInputError("both samples must be nonempty")
    sx = np.sort(xv)
    sy = np.sort(yv)
    pooled = np.concatenate([xv, yv])
    F = np.searchsorted(sx, pooled, side="right") / a
    G = np.searchsorted(sy, pooled, side="right") / b
    return float(a * b / (a + b) ** 2 * np.sum((F - G) ** 2))


def cvm_null_moments(m: int, n: int) -> tuple[float, float]:
    """Exact null mean and standard deviation of the two-sample statistic.

    Classical finite-sample moments for continuous data at sample sizes
    (m, n):

        E[T]   = (N + 1) / (6 N)
        Var[T] = (N + 1) / (45 N^2) * (4 m n N - 3 (m^2 + n^2) - 2 m n)
                 / (4 m n)

    with N = m + n.
    """
    if m < 1 or n < 1:
        raise InvalidInputError("sample sizes must be >= 1")
    N = m + n
    mu = (N + 1) / (6 * N)
    var = (N + 1) / (45 * N**2) * (4 * m * n * N - 3 * (m**2 + n**2) - 2 * m * n) / (4 * m * n)
    return mu, math.sqrt(max(var, 0.0))


def _tie_groups(values: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Sorted order of a sample and, per sorted position, the position of
    the last member of its tie group."""
    order = np.argsort(values, kind="stable")
    sorted_v = values[order]
    boundaries = np.flatnonzero(np.r_[sorted_v[1:] != sorted_v[:-1], True])
    group_end = boundaries[np.searchsorted(boundaries, np.arange(values.size))]
    return order, group_end


def _cvm_scan_stats(values: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    """Raw CvM statistic at every prefix size in ``sizes``.

    The pooled sample of every split is the whole series, so the sort and
    tie structure are shared across splits.
    """
    N = values.size
    order, group_end = _tie_groups(values)
    totals = group_end + 1.0

    out = np.empty(sizes.size)
    for idx, s in enumerate(sizes):
        member = order < s
        cum = np.cumsum(member)
        Fc = cum[group_end]
        F = Fc / s
        G = (totals - Fc) / (N - s)
        out[idx] = s * (N - s) / N**2 * np.sum((F - G) ** 2)
    return out


def _cvm_permutation_moments(
    group_end: np.ndarray, s: int, permutations: int, rng
) -> tuple[float, float]:
    """Estimate the null moments at prefix size s by random relabeling.

    Relabels the observed pooled sample itself (``group_end`` encodes its
    sorted tie structure), so the estimate stays valid under ties.
    """
    N = group_end.size
    totals = group_end + 1.0
    stats = np.empty(permutations)
    positions = np.arange(N)
    for b in range(permutations):
        member = np.zeros(N, dtype=bool)
        member[rng.choice(positions, size=s, replace=False)] = True
        cum = np.cumsum(member)
        Fc = cum[group_end]
        F = Fc / s
        G = (totals - Fc) / (N - s)
        stats[b] = s * (N - s) / N**2 * np.sum((F - G) ** 2)
    return float(stats.mean()), float(stats.std())


def cvm_single_change(
    series,
    min_segment: int = 30,
    moments: str = "exact",
    permutations: int = 500,
    seed: int = 0,
    series_kind: str = "raw",
) -> DetectionResult:
    """Locate a single change by the standardized CvM statistic.

    For every admissible split t the statistic T_t of prefix vs suffix is
    standardized to D_t = (T_t - mu_t) / sigma_t with the null moments at
    sizes (t, T - t); the change index is argmax D_t + 1 convention-wise
    (first observation of the new regime), ties to the smallest index.

    ``moments="exact"`` uses the closed-form moments (continuous-data
    formulas, the default); ``moments="permutation"`` estimates them by
    at least 500 random relabelings and is the slow, tie-robust fallback.

    A constant series carries no evidence of change: by convention the
    smallest admissible index is returned with statistic 0.

    Raises
    ------
    UnsupportedError
        If the series is multivariate.
    InvalidInputError
        If the series is shorter than 2 * min_segment.
    """
    v = _as_univariate(series, "CvM CPM does not support multivariate time series")
    T = v.size
    if min_segment < 2:
        raise InvalidInputError("min_segment must be >= 2 for the CvM detector")
    if T < 2 * min_segment:
        raise InvalidInputError(
            f"series of length {T} admits no split with min_segment={min_segment}"
        )
    if moments not in ("exact", "permutation"):
        raise InvalidInputError(f"unknown moments mode {moments!r}")

    sizes = np.arange(min_segment, T - min_segment + 1)
    if np.ptp(v) == 0.0:
        return DetectionResult(
            detector=CVM,
            series_kind=series_kind,
            change_points=(int(sizes[0]) + 1,),
            statistics=(0.0,),
        )

    stats = _cvm_scan_stats(v, sizes)
    if moments == "exact":
        mom = [cvm_null_moments(int(s), int(T - s)) for s in sizes]
    else:
        if permutations < 500:
            raise InvalidInputError("permutation moments need >= 500 permutations")
        rng = np.random.default_rng(seed)
        _, group_end = _tie_groups(v)
        mom = [
            _cvm_permutation_moments(group_end, int(s), permutations, rng)
            for s in sizes
        ]

    D = np.empty(sizes.size)
    for i, (mu, sigma) in enumerate(mom):
        if sigma > 0.0:
            D[i] = (stats[i] - mu) / sigma
        else:
            D[i] = 0.0 if stats[i] == mu else math.copysign(math.inf, stats[i] - mu)
    best = int(np.argmax(D))
    return DetectionResult(
        detector=CVM,
        series_kind=series_kind,
        change_points=(int(sizes[best]) + 1,),
        statistics=(float(D[best]),),
    )


# ---------------------------------------------------------------------------
# Bartlett
# ---------------------------------------------------------------------------

def bartlett_statistic(x, y) -> float:
    """Two-group Bartlett statistic for equality of variances.

    chi2 = [(N - 2) ln Sp^2 - (n1 - 1) ln S1^2 - (n2 - 1) ln S2^2] / C
    with Sp^2 the pooled variance and
    C = 1 + (1/(n1 - 1) + 1/(n2 - 1) - 1/(N - 2)) / 3.

    Raises
    ------
    InvalidInputError
        If either group has < 2 observations or zero sample variance.
    """
    xv = np.asarray(x, dtype=np.float64).ravel()
    yv = np.asarray(y, dtype=np.float64).ravel()
    n1, n2 = xv.size, yv.size
    if n1 < 2 or n2 < 2:
        raise InvalidInputError("both groups need >= 2 observations")
    v1 = float(np.var(xv, ddof=1))
    v2 = float(np.var(yv, ddof=1))
    if v1 <= 0.0 or v2 <= 0.0:
        raise InvalidInputError("Bartlett statistic undefined for zero variance")
    if v1 == v2:
        # mathematically zero; skip the log path to avoid rounding noise
        return 0.0
    N = n1 + n2
    sp = ((n1 - 1) * v1 + (n2 - 1) * v2) / (N - 2)
    C = 1.0 + (1.0 / (n1 - 1) + 1.0 / (n2 - 1) - 1.0 / (N - 2)) / 3.0
    chi = ((N - 2) * math.log(sp) - (n1 - 1) * math.log(v1) - (n2 - 1) * math.log(v2)) / C
    return chi


def bartlett_single_change(
    series,
    min_segment: int = 30,
    series_kind: str = "raw",
) -> DetectionResult:
    """Locate a single variance change by scanning the Bartlett statistic.

    Splits where either side has zero sample variance are skipped (one
    aggregated warning reports how many); if every split is skipped the
    series is degenerate for this detector and an error is raised.

    Raises
    ------
    UnsupportedError
        If the series is multivariate.
    InvalidInputError
        If no admissible split exists or all splits are degenerate.
    """
    v = _as_univariate(series)
    T = v.size
    min_eff = max(min_segment, 2)
    if T < 2 * min_eff:
        raise InvalidInputError(
            f"series of length {T} admits no split with min_segment={min_segment}"
        )
    best_tau = None
    best_stat = -math.inf
    skipped = 0
    for s in range(min_eff, T - min_eff + 1):
        v1 = float(np.var(v[:s], ddof=1))
        v2 = float(np.var(v[s:], ddof=1))
        if v1 <= 0.0 or v2 <= 0.0:
            skipped += 1
            continue
        if v1 == v2:
            stat = 0.0
        else:
            N = T
            n1, n2 = s, T - s
            sp = ((n1 - 1) * v1 + (n2 - 1) * v2) / (N - 2)
            C = 1.0 + (1.0 / (n1 - 1) + 1.0 / (n2 - 1) - 1.0 / (N - 2)) / 3.0
            stat = ((N - 2) * math.log(sp)
                    - (n1 - 1) * math.log(v1)
                    - (n2 - 1) * math.log(v2)) / C
        if stat > best_stat:
            best_stat = stat
            best_tau = s + 1
    if best_tau is None:
        raise InvalidInputError("all candidate splits degenerate (zero variance)")
    if skipped:
        warnings.warn(
            f"{skipped} candidate splits skipped (zero variance on one side)",
            stacklevel=2,
        )
    return DetectionResult(
        detector=BARTLETT,
        series_kind=series_kind,
        change_points=(best_tau,),
        statistics=(best_stat,),
    )
