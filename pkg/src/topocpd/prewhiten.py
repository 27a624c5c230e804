"""Pre-whitening of autocorrelated series before detection.

Detectors in this package assume (approximately) independent
observations, so strongly autocorrelated series are first reduced to
AR(p) residuals or first differences.  Both transforms shorten the
series; residual i of an AR(p) fit corresponds to original time p + i
and difference i of order d to original time d + i, a bookkeeping rule
the pipeline applies when mapping detected indices back.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FittingError, InvalidInputError
from .series import TimeSeries


@dataclass(frozen=True)
class ArModel:
    """Autoregressive model of order p.

    ``intercept`` is the fitted series mean; the model is
    y_t - intercept = sum_j coefficients[j] * (y_{t-j} - intercept) + e_t.
    """

    order: int
    coefficients: tuple[float, ...]
    intercept: float
    noise_variance: float

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", tuple(float(c) for c in self.coefficients)
        )
        if self.order < 0:
            raise InvalidInputError(f"order must be >= 0, got {self.order}")
        if len(self.coefficients) != self.order:
            raise InvalidInputError(
                f"order {self.order} model needs {self.order} coefficients, "
                f"got {len(self.coefficients)}"
            )
        if self.noise_variance < 0.0:
            raise InvalidInputError("noise_variance must be >= 0")


def _as_series(series) -> TimeSeries:
    return series if isinstance(series, TimeSeries) else TimeSeries(series)


def fit_ar(series, p: int) -> ArModel:
    """Fit an AR(p) model by the Yule-Walker method.

    Autocovariances use the biased 1/T normalization,
    gamma(h) = (1/T) sum_t (y_t - ybar)(y_{t+h} - ybar), which keeps the
    Toeplitz system positive semidefinite; the coefficient vector solves
    Toeplitz(gamma_0..gamma_{p-1}) phi = (gamma_1..gamma_p).  p = 0 is
    allowed and fits the mean only.

    Raises
    ------
    FittingError
        On constant input or a singular Toeplitz system.
    InvalidInputError
        If the series is multivariate or not longer than p + 1.
    """
    y = _as_series(series).univariate_values()
    T = y.size
    if p < 0:
        raise InvalidInputError(f"order must be >= 0, got {p}")
    if T <= p + 1:
        raise InvalidInputError(f"need length > p + 1 = {p + 1}, got {T}")
    if np.ptp(y) == 0.0:
        raise FittingError("cannot fit an AR model to a constant series")
    ybar = float(y.mean())
    c = y - ybar
    gamma = np.array([c[: T - h] @ c[h:] for h in range(p + 1)]) / T
    if p == 0:
        return ArModel(0, (), ybar, float(gamma[0]))
    idx = np.arange(p)
    R = gamma[np.abs(idx[:, None] - idx[None, :])]
    r = gamma[1 : p + 1]
    try:
        phi = np.linalg.solve(R, r)
    except np.linalg.LinAlgError as exc:
        raise FittingError(f"singular Yule-Walker system for p={p}") from exc
    if not np.isfinite(phi).all():
        raise FittingError(f"Yule-Walker solution not finite for p={p}")
    noise = float(gamma[0] - phi @ r)
    return ArModel(p, tuple(float(v) for v in phi), ybar, max(noise, 0.0))


def ar_residuals(series, model: ArModel) -> TimeSeries:
    """Residuals of a fitted AR model, one per predictable time step.

    e_t = (y_t - intercept) - sum_j phi_j (y_{t-j} - intercept) for
    t = p+1 .. T, so the output has length T - p and residual i
    corresponds to original time p + i.
    """
    y = _as_series(series).univariate_values()
    p = model.order
    if y.size <= p:
        raise InvalidInputError(f"series of length {y.size} too short for order {p}")
    c = y - model.intercept
    e = c[p:].copy()
    for j, phi in enumerate(model.coefficients, start=1):
        e -= phi * c[p - j : y.size - j]
    return TimeSeries(e)


def difference(series, order: int = 1) -> TimeSeries:
    """Difference a series ``order`` times (any dimension).

    Output length is T - order; entry i corresponds to original time
    order + i.
    """
    series = _as_series(series)
    if order < 1:
        raise InvalidInputError(f"difference order must be >= 1, got {order}")
    if series.length <= order:
        raise InvalidInputError(
            f"series of length {series.length} too short to difference {order} times"
        )
    return TimeSeries(np.diff(series.values, n=order, axis=0))
