"""Linear trend fitting and multi-year prediction for RS time series.

Ordinary least squares of value against year, solved in closed form on
mean-centered years (raw year values near 2000 would otherwise make the
normal equations needlessly ill-conditioned); slope and intercept are
reported in the original year coordinate. A Pearson correlation gate
(default |r| >= 0.8) indicates whether a linear fit is trustworthy before
the extrapolation is used.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateYearsError, DimensionMismatchError, TooFewPointsError
from .numerics import pearson

MIN_FIT_POINTS = 3
DEFAULT_MIN_ABS_R = 0.8
DEFAULT_HORIZON = 5


@dataclass(frozen=True)
class TimeSeries:
    """Yearly observations with strictly increasing integer years."""

    years: tuple
    values: tuple

    def __post_init__(self):
        years = tuple(int(y) for y in self.years)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)
        if len(years) != len(values):
            raise DimensionMismatchError(f"{len(years)} years vs {len(values)} values")
        if any(b <= a for a, b in zip(years, years[1:])):
            raise DegenerateYearsError("years must be strictly increasing")

    def __len__(self):
        return len(self.years)


@dataclass(frozen=True)
class LinearFit:
    slope: float           # per year
    intercept: float       # value at year 0
    r: float               # Pearson correlation of year vs value
    residuals: np.ndarray
    years: tuple           # observed years the fit was computed from

    def __post_init__(self):
        res = np.array(self.residuals, dtype=float)
        res.setflags(write=False)
        object.__setattr__(self, "residuals", res)
        object.__setattr__(self, "years", tuple(int(y) for y in self.years))

    def predicted(self, year) -> float:
        return self.slope * float(year) + self.intercept


def fit(series: TimeSeries) -> LinearFit:
    """Closed-form OLS of value on year.

    slope = sum(t_c * v_c) / sum(t_c^2) on centered coordinates; the normal
    equations force sum(residuals) = 0 and sum(year * residual) = 0.
    """
    n = len(series)
    if n < MIN_FIT_POINTS:
        raise TooFewPointsError(f"need >= {MIN_FIT_POINTS} points, got {n}")
    years = np.array(series.years, dtype=float)
    values = np.array(series.values, dtype=float)
    ty = years - years.mean()
    if float(ty @ ty) == 0.0:
        raise DegenerateYearsError("years are constant")  # unreachable for a TimeSeries
    tv = values - values.mean()
    slope = float(ty @ tv) / float(ty @ ty)
    intercept = float(values.mean() - slope * years.mean())
    residuals = values - (slope * years + intercept)
    r = pearson(years, values)
    return LinearFit(slope=slope, intercept=intercept, r=r,
                     residuals=residuals, years=series.years)


def relativity_check(series: TimeSeries, min_abs_r: float = DEFAULT_MIN_ABS_R):
    """Pearson correlation of year vs value and whether |r| clears the gate."""
    r = pearson(np.array(series.years, dtype=float), np.array(series.values, dtype=float))
    return r, abs(r) >= min_abs_r


def predict(linear: LinearFit, horizon_years=None) -> tuple:
    """(year, predicted value) pairs for the requested years.

    Defaults to the five years following the last observed year.
    """
    if horizon_years is None:
        last = linear.years[-1]
        horizon_years = range(last + 1, last + 1 + DEFAULT_HORIZON)
    return tuple((int(y), linear.predicted(y)) for y in horizon_years)


@dataclass(frozen=True)
class ForecastResult:
    """Fit, linearity gate outcome, and horizon predictions for one series."""

    fit: LinearFit
    relativity_r: float
    relativity_pass: bool
    predictions: tuple


def forecast_series(series: TimeSeries, min_abs_r: float = DEFAULT_MIN_ABS_R,
                    horizon: int = DEFAULT_HORIZON) -> ForecastResult:
    """Fit, gate, and predict in one call.

    A failed linearity gate does not abort the forecast; it is reported via
    ``relativity_pass`` so callers can flag the output.
    """
    linear = fit(series)
    r, passed = relativity_check(series, min_abs_r)
    last = series.years[-1]
    preds = predict(linear, range(last + 1, last + 1 + int(horizon)))
    return ForecastResult(fit=linear, relativity_r=r, relativity_pass=passed,
                          predictions=preds)
