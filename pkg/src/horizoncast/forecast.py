"""Horizon forecasting: calibration, projection, milestones, delays.

The linear pipeline calibrates the ratio c = past horizon growth / past
compute growth on history, anchors at the fitted trend value of the last
observation, and integrates c times the future compute path's log slope.
Only slopes of the compute path matter there; the concave variant also
uses levels, through a local elasticity that declines with compute.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import (
    LN10,
    ComputePath,
    HorizonObservation,
    TimeSeries,
    TrendFit,
    fit_loglinear_trend,
    growth_rate,
    log_interp,
)
from .errors import (
    CalibrationError,
    DomainError,
    InsufficientDataError,
    IntegrationError,
    ValidationError,
)
from .growth import GrowthParams
from .scaling import ConcaveFit, local_elasticity

MONTH = 1.0 / 12.0


@dataclass(frozen=True)
class CalibrationResult:
    """Past growth rates, their ratio c, and the forecast anchor."""

    c: float
    past_g_y: float
    past_g_k: float
    anchor_t: float
    anchor_minutes: float
    reliability: str


@dataclass(frozen=True)
class Milestone:
    label: str
    threshold_minutes: float
    reliability: str = "p50"

    def __post_init__(self):
        if not self.threshold_minutes > 0:
            raise ValidationError("milestone threshold must be positive")


@dataclass(frozen=True)
class MilestoneDelay:
    milestone: Milestone
    date_trend: float | None
    date_forecast: float | None
    delay_years: float | None
    flag: str | None = None


@dataclass(frozen=True)
class ForecastResult:
    horizon_path: TimeSeries
    trend_path: TimeSeries
    milestones: list[MilestoneDelay]
    calibration: CalibrationResult


def _ols(t: np.ndarray, y: np.ndarray) -> TrendFit:
    """Plain OLS of y on t (duplicate t allowed, unlike TimeSeries)."""
    if len(np.unique(t)) < 2:
        raise InsufficientDataError("need at least 2 distinct dates")
    t_mean, y_mean = t.mean(), y.mean()
    tc = t - t_mean
    slope = float(np.dot(tc, y - y_mean) / np.dot(tc, tc))
    intercept = float(y_mean - slope * t_mean)
    resid = y - (y_mean + slope * tc)
    sst = float(np.dot(y - y_mean, y - y_mean))
    r2 = 1.0 if sst == 0.0 else 1.0 - float(np.dot(resid, resid)) / sst
    return TrendFit(slope, intercept, r2)


def monthly_grid(t0: float, t_end: float) -> np.ndarray:
    """Samples at t0 + k/12 plus the exact endpoint."""
    if not t_end > t0:
        raise DomainError("horizon end must lie after the anchor")
    n = int(math.floor((t_end - t0) * 12.0 + 1e-9))
    ts = t0 + np.arange(n + 1) / 12.0
    if ts[-1] < t_end - 1e-9:
        ts = np.append(ts, t_end)
    return ts


def usd_to_flop_path(
    usd_series: TimeSeries, flop_per_usd_history: TimeSeries
) -> ComputePath:
    """Convert a dollars path to log10 FLOP using the fitted FLOP/$ trend.

    The fitted trend (not the raw history) is evaluated at every spend
    date, so the conversion stays meaningful beyond the history's span.
    """
    if np.any(usd_series.values <= 0):
        raise DomainError("spend values must be positive")
    if len(usd_series) < 2:
        raise InsufficientDataError("need at least 2 spend points to form a path")
    if flop_per_usd_history.times[-1] - flop_per_usd_history.times[0] < 2.0:
        raise InsufficientDataError("FLOP/$ history must span at least 2 years")
    trend = fit_loglinear_trend(flop_per_usd_history, log_transform=True)
    log10_flop = (
        np.log10(usd_series.values)
        + trend.value_at(usd_series.times) / LN10
    )
    return ComputePath(usd_series.times, log10_flop)


def calibrate(
    horizon_history: Sequence[HorizonObservation],
    compute_history: ComputePath,
    reliability: str = "p50",
    window: tuple[float, float] = (2019.0, 2025.5),
) -> CalibrationResult:
    """Estimate past growth rates and the proportionality constant c.

    past_g_y comes from the horizon observations inside the window;
    past_g_k from the compute path sampled on a uniform monthly grid over
    the same window, so irregular release clustering cannot bias it. The
    anchor is the fitted trend value at the last observation date.
    """
    t_start, t_end = window
    if not t_end > t_start:
        raise ValidationError("calibration window must have positive length")
    selected = [
        o for o in horizon_history
        if t_start <= o.release <= t_end and o.horizon(reliability) is not None
    ]
    if len(selected) < 2:
        raise InsufficientDataError(
            f"need at least 2 {reliability} observations inside the window"
        )
    releases = np.array([o.release for o in selected])
    minutes = np.array([o.horizon(reliability) for o in selected])
    trend_y = _ols(releases, np.log(minutes))

    grid = monthly_grid(t_start, t_end)
    ln_k = LN10 * np.asarray(log_interp(compute_history, grid))
    past_g_k = _ols(grid, ln_k).slope
    if abs(past_g_k) < 1e-12:
        raise CalibrationError("past compute growth is zero; c is undefined")

    anchor_t = float(releases.max())
    anchor_minutes = float(math.exp(trend_y.value_at(anchor_t)))
    return CalibrationResult(
        c=trend_y.slope / past_g_k,
        past_g_y=trend_y.slope,
        past_g_k=past_g_k,
        anchor_t=anchor_t,
        anchor_minutes=anchor_minutes,
        reliability=reliability,
    )


def forecast_horizon(
    cal: CalibrationResult, future_compute: ComputePath, horizon_end: float
) -> TimeSeries:
    """Project the horizon path implied by a future compute path.

    ln Y(t) = ln Y0 + c * ln10 * (log10 K(t) - log10 K(t0)), sampled
    monthly. Reduces exactly to trend extrapolation when the path's slope
    equals the calibrated past compute growth everywhere.
    """
    ts = monthly_grid(cal.anchor_t, horizon_end)
    levels = np.asarray(log_interp(future_compute, ts))
    ln_y = (
        math.log(cal.anchor_minutes)
        + cal.c * LN10 * (levels - log_interp(future_compute, cal.anchor_t))
    )
    return TimeSeries(ts, np.exp(ln_y))


def trend_horizon(cal: CalibrationResult, horizon_end: float) -> TimeSeries:
    """Pure trend extrapolation at the calibrated past horizon growth."""
    ts = monthly_grid(cal.anchor_t, horizon_end)
    ln_y = math.log(cal.anchor_minutes) + cal.past_g_y * (ts - cal.anchor_t)
    return TimeSeries(ts, np.exp(ln_y))


def _refine_with_knots(path: ComputePath, grid: np.ndarray) -> np.ndarray:
    lo, hi = grid[0], grid[-1]
    inner = path.years[(path.years > lo + 1e-12) & (path.years < hi - 1e-12)]
    refined = np.union1d(grid, inner)
    return refined


def _cumulative_log_growth(
    path: ComputePath,
    fit: ConcaveFit,
    s_c: float,
    times: np.ndarray,
) -> np.ndarray:
    """Cumulative integral of elasticity(s_c*K(t)) * gK(t) along the path.

    Simpson's rule on intervals split at the path's knots; within each
    interval the log slope is constant and the integrand smooth, so the
    quadrature is exact in the rho = 0 limit and quartic-accurate off it.
    """
    refined = _refine_with_knots(path, times)

    def integrand(t: float, g_seg: float) -> float:
        k_train = s_c * 10.0 ** log_interp(path, t)
        if not math.isfinite(k_train):
            raise IntegrationError("compute level overflowed", t=t)
        eps = local_elasticity(fit, k_train)
        if not math.isfinite(eps):
            raise IntegrationError("local elasticity overflowed", t=t)
        return eps * g_seg

    cum = np.empty(len(refined))
    cum[0] = 0.0
    for i in range(len(refined) - 1):
        a, b = float(refined[i]), float(refined[i + 1])
        mid = 0.5 * (a + b)
        g_seg = growth_rate(path, mid)
        step = (b - a) / 6.0 * (
            integrand(a, g_seg) + 4.0 * integrand(mid, g_seg) + integrand(b, g_seg)
        )
        cum[i + 1] = cum[i] + step
    return np.interp(times, refined, cum)


def forecast_horizon_concave(
    cal: CalibrationResult,
    future_compute: ComputePath,
    fit: ConcaveFit,
    p: GrowthParams,
    horizon_end: float,
) -> TimeSeries:
    """Project the horizon path with a compute-dependent local elasticity.

    Integrates d ln Y / dt = beta * (s_C K)^rho * (1 + lam/beta) * gK(t)
    from the calibration anchor at monthly steps.
    """
    ts = monthly_grid(cal.anchor_t, horizon_end)
    integral = _cumulative_log_growth(future_compute, fit, p.s_c, ts)
    ln_y = math.log(cal.anchor_minutes) + (1.0 + p.lambda_over_beta) * integral
    if np.any(~np.isfinite(ln_y)):
        bad = ts[~np.isfinite(ln_y)][0]
        raise IntegrationError("horizon overflowed", t=float(bad))
    return TimeSeries(ts, np.exp(ln_y))


def fit_lambda_over_beta_concave(
    horizon_history: Sequence[HorizonObservation],
    compute_history: ComputePath,
    fit: ConcaveFit,
    s_c: float,
    reliability: str = "p50",
) -> float:
    """Least-squares lambda/beta matching predicted ln Y to observed history.

    Predictions along the historical path are ln Y0 + (1 + L) * I(t) with
    I(t) the elasticity-weighted log-growth integral, so the objective is
    exactly quadratic in (1 + L): the minimizer (with a free level) is the
    OLS coefficient of observed ln Y on I, minus one.
    """
    rows = [o for o in horizon_history if o.horizon(reliability) is not None]
    if len(rows) < 2:
        raise InsufficientDataError("need at least 2 overlapping observations")
    rows.sort(key=lambda o: o.release)
    times = np.array([o.release for o in rows])
    ln_y = np.log([o.horizon(reliability) for o in rows])
    sample = np.unique(times)
    integral_at = dict(zip(sample, _cumulative_log_growth(
        compute_history, fit, s_c, sample
    )))
    integral = np.array([integral_at[t] for t in times])
    ic = integral - integral.mean()
    denom = float(np.dot(ic, ic))
    if denom < 1e-20:
        raise CalibrationError(
            "no compute variation over the observation window; "
            "lambda/beta is not identified"
        )
    coef = float(np.dot(ic, ln_y - ln_y.mean()) / denom)
    return coef - 1.0


def milestone_date(path: TimeSeries, threshold_minutes: float) -> float | None:
    """First time the path crosses the threshold, interpolated in ln Y."""
    if not threshold_minutes > 0:
        raise DomainError("threshold must be positive")
    ln_y = np.log(path.values)
    ln_t = math.log(threshold_minutes)
    if ln_y[0] >= ln_t:
        return float(path.times[0])
    above = ln_y >= ln_t
    if not above.any():
        return None
    k = int(np.argmax(above))
    t0, t1 = path.times[k - 1], path.times[k]
    y0, y1 = ln_y[k - 1], ln_y[k]
    return float(t0 + (ln_t - y0) / (y1 - y0) * (t1 - t0))


def milestone_delays(
    trend: TimeSeries,
    forecast: TimeSeries,
    milestones: Sequence[Milestone],
) -> list[MilestoneDelay]:
    """Crossing dates under both paths and the implied delays.

    A milestone the forecast never reaches inside its span is flagged
    ">span" and carries no delay.
    """
    if abs(trend.times[0] - forecast.times[0]) > 1e-9:
        raise ValidationError("trend and forecast paths must share their start")
    out = []
    for m in milestones:
        date_trend = milestone_date(trend, m.threshold_minutes)
        date_forecast = milestone_date(forecast, m.threshold_minutes)
        delay = (
            date_forecast - date_trend
            if date_trend is not None and date_forecast is not None
            else None
        )
        flag = ">span" if date_forecast is None else None
        out.append(MilestoneDelay(m, date_trend, date_forecast, delay, flag))
    return out
