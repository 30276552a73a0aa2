"""Canonical domain types and piecewise-linear path algebra.

Unit conventions used throughout the package:

* time is a decimal calendar year (2025.25 = start of April 2025),
  leap-aware in both directions;
* compute levels are log10 FLOP;
* growth rates are natural-log units per year (the ln 10 conversion
  happens at the boundary of the two conventions).

All types are immutable after construction and all operations are pure.
"""

from __future__ import annotations

import datetime as dt
import math
import warnings
from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .errors import DomainError, InsufficientDataError, ValidationError

LN10 = math.log(10.0)


def decimal_year(d: dt.date) -> float:
    """ISO date -> decimal year via day-of-year / days-in-year."""
    start = dt.date(d.year, 1, 1).toordinal()
    length = dt.date(d.year + 1, 1, 1).toordinal() - start
    return d.year + (d.toordinal() - start) / length


def date_from_decimal_year(t: float) -> dt.date:
    """Inverse of :func:`decimal_year`, rounding to the nearest day."""
    if not math.isfinite(t):
        raise DomainError(f"non-finite instant {t}")
    year = math.floor(t)
    start = dt.date(year, 1, 1).toordinal()
    length = dt.date(year + 1, 1, 1).toordinal() - start
    day = min(int(round((t - year) * length)), length - 1)
    return dt.date.fromordinal(start + day)


def parse_instant(text: str) -> float:
    """Parse an ISO-8601 date or a literal decimal year."""
    s = text.strip()
    try:
        return decimal_year(dt.date.fromisoformat(s))
    except ValueError:
        pass
    try:
        value = float(s)
    except ValueError:
        raise ValidationError(f"cannot parse instant {text!r}") from None
    if not math.isfinite(value):
        raise ValidationError(f"non-finite instant {text!r}")
    return value


def _as_readonly(values: Iterable[float]) -> np.ndarray:
    arr = np.asarray(list(values) if not isinstance(values, np.ndarray) else values,
                     dtype=float)
    arr = arr.copy()
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class TimeSeries:
    """Ordered (decimal-year, value) samples."""

    times: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "times", _as_readonly(self.times))
        object.__setattr__(self, "values", _as_readonly(self.values))
        if self.times.ndim != 1 or self.times.shape != self.values.shape:
            raise ValidationError("times and values must be 1-D and equal length")
        if len(self.times) < 1:
            raise ValidationError("a series needs at least one point")
        if not np.all(np.isfinite(self.times)) or not np.all(np.isfinite(self.values)):
            raise ValidationError("series contains non-finite entries")
        if np.any(np.diff(self.times) <= 0):
            raise ValidationError(
                "series times must be strictly increasing (duplicate or "
                "out-of-order timestamps are rejected, not averaged)"
            )

    def __len__(self) -> int:
        return len(self.times)

    @classmethod
    def from_points(cls, points: Iterable[tuple[float, float]]) -> "TimeSeries":
        pts = list(points)
        return cls(np.array([p[0] for p in pts]), np.array([p[1] for p in pts]))

    def points(self) -> list[tuple[float, float]]:
        return [(float(t), float(v)) for t, v in zip(self.times, self.values)]


@dataclass(frozen=True)
class ComputePath:
    """Piecewise-linear path in (decimal year, log10 total-R&D-FLOP) space."""

    years: np.ndarray
    log10_flop: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "years", _as_readonly(self.years))
        object.__setattr__(self, "log10_flop", _as_readonly(self.log10_flop))
        if self.years.ndim != 1 or self.years.shape != self.log10_flop.shape:
            raise ValidationError("knot arrays must be 1-D and equal length")
        if len(self.years) < 2:
            raise ValidationError("a compute path needs at least two knots")
        if not np.all(np.isfinite(self.years)) or not np.all(np.isfinite(self.log10_flop)):
            raise ValidationError("path contains non-finite knots")
        if np.any(np.diff(self.years) <= 0):
            raise ValidationError("knot years must be strictly increasing")

    def __len__(self) -> int:
        return len(self.years)

    @classmethod
    def from_knots(cls, knots: Iterable[tuple[float, float]]) -> "ComputePath":
        pts = list(knots)
        return cls(np.array([p[0] for p in pts]), np.array([p[1] for p in pts]))


@dataclass(frozen=True)
class HorizonObservation:
    """One released model with its measured time horizon(s).

    ``in_sample`` mirrors an optional fixture column used to mark rows
    that belong to the algorithmic-progress estimation sample.
    """

    model_id: str
    developer: str
    release: float
    p50_minutes: float | None = None
    p80_minutes: float | None = None
    training_flop: float | None = None
    in_sample: bool = True

    def __post_init__(self):
        if self.p50_minutes is None and self.p80_minutes is None:
            raise ValidationError(
                f"{self.model_id}: at least one of p50/p80 must be present"
            )
        for name in ("p50_minutes", "p80_minutes", "training_flop"):
            v = getattr(self, name)
            if v is not None and (not math.isfinite(v) or v <= 0):
                raise ValidationError(f"{self.model_id}: {name} must be > 0, got {v}")
        if not math.isfinite(self.release):
            raise ValidationError(f"{self.model_id}: non-finite release date")
        if (
            self.p50_minutes is not None
            and self.p80_minutes is not None
            and self.p80_minutes > self.p50_minutes
        ):
            raise ValidationError(
                f"{self.model_id}: p80 horizon ({self.p80_minutes}) exceeds "
                f"p50 horizon ({self.p50_minutes})"
            )

    def horizon(self, reliability: str) -> float | None:
        if reliability == "p50":
            return self.p50_minutes
        if reliability == "p80":
            return self.p80_minutes
        raise DomainError(f"unknown reliability {reliability!r}")


@dataclass(frozen=True)
class ModelBenchmarkObservation:
    """One model size evaluated on one benchmark, within a model family."""

    family: str
    model_id: str
    benchmark: str
    params_count: float
    tokens_count: float
    training_flop: float
    horizon_minutes: float

    def __post_init__(self):
        for name in ("params_count", "tokens_count", "training_flop", "horizon_minutes"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0:
                raise ValidationError(
                    f"{self.model_id}/{self.benchmark}: {name} must be > 0, got {v}"
                )
        approx = 6.0 * self.params_count * self.tokens_count
        ratio = self.training_flop / approx
        if ratio > 3.0 or ratio < 1.0 / 3.0:
            warnings.warn(
                f"{self.model_id}/{self.benchmark}: training_flop "
                f"{self.training_flop:.3g} is {ratio:.2f}x the 6*params*tokens "
                f"estimate {approx:.3g}",
                stacklevel=2,
            )

    @property
    def group(self) -> tuple[str, str]:
        """Fixed-effect group key: one intercept per family x benchmark."""
        return (self.family, self.benchmark)


def log_interp(path: ComputePath, t: float | np.ndarray) -> float | np.ndarray:
    """log10 FLOP at ``t``: linear between knots, slope-extended outside.

    Beyond the last knot the final segment's slope continues (compute
    growth stabilizes at its last rate); before the first knot the first
    segment's slope is used. Constant extrapolation never happens.
    """
    ts = np.asarray(t, dtype=float)
    x, y = path.years, path.log10_flop
    out = np.interp(ts, x, y)
    s_first = (y[1] - y[0]) / (x[1] - x[0])
    s_last = (y[-1] - y[-2]) / (x[-1] - x[-2])
    out = np.where(ts < x[0], y[0] + (ts - x[0]) * s_first, out)
    out = np.where(ts > x[-1], y[-1] + (ts - x[-1]) * s_last, out)
    if np.ndim(t) == 0:
        return float(out)
    return out


def growth_rate(path: ComputePath, t: float | np.ndarray) -> float | np.ndarray:
    """Natural-log growth per year of the path at ``t``.

    Piecewise constant; at a knot the right-hand segment's slope applies
    (forecasts integrate forward, so the coming interval's slope governs).
    """
    ts = np.asarray(t, dtype=float)
    x, y = path.years, path.log10_flop
    seg = np.clip(np.searchsorted(x, ts, side="right") - 1, 0, len(x) - 2)
    slopes = (y[seg + 1] - y[seg]) / (x[seg + 1] - x[seg])
    out = slopes * LN10
    if np.ndim(t) == 0:
        return float(out)
    return out


class TrendFit(NamedTuple):
    slope: float
    intercept: float
    r2: float

    def value_at(self, t: float | np.ndarray) -> float | np.ndarray:
        return self.intercept + self.slope * t


def fit_loglinear_trend(series: TimeSeries, log_transform: bool = True) -> TrendFit:
    """OLS of (log) value on time.

    With ``log_transform`` the slope is in natural-log units per year and
    the intercept is the fitted ln(value) at year 0. A constant series
    has slope 0 and, by convention, r2 = 1 (the fit is exact).
    """
    t = series.times
    if len(np.unique(t)) < 2:
        raise InsufficientDataError("trend fit needs at least 2 distinct times")
    v = series.values
    if log_transform:
        if np.any(v <= 0):
            raise DomainError("log-transformed trend requires positive values")
        y = np.log(v)
    else:
        y = v.astype(float)
    t_mean = t.mean()
    y_mean = y.mean()
    tc = t - t_mean
    slope = float(np.dot(tc, y - y_mean) / np.dot(tc, tc))
    intercept = float(y_mean - slope * t_mean)
    resid = y - (y_mean + slope * tc)
    sst = float(np.dot(y - y_mean, y - y_mean))
    ssr = float(np.dot(resid, resid))
    r2 = 1.0 if sst == 0.0 else 1.0 - ssr / sst
    return TrendFit(slope, intercept, r2)
