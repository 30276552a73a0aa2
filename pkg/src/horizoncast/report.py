"""Forecast request handling shared by the CLI and the HTTP service.

Both front ends funnel through the same request -> ForecastResult ->
response-bytes pipeline, which is what makes their JSON outputs
byte-identical for identical inputs. The wire schema is fixed: requests
are {"path", "unit", "reliability", "model", "thresholds_minutes",
"calibration_window"} and responses are {"horizon_path", "trend_path",
"milestones", "calibration"}.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .config import Config, Dataset
from .core import ComputePath, TimeSeries
from .errors import ValidationError
from .forecast import (
    CalibrationResult,
    ForecastResult,
    Milestone,
    calibrate,
    fit_lambda_over_beta_concave,
    forecast_horizon,
    forecast_horizon_concave,
    milestone_delays,
    trend_horizon,
    usd_to_flop_path,
)
from .growth import GrowthParams
from .scaling import ConcaveFit, fit_concave

UNITS = ("flop", "usd_2025")
MODELS = ("linear", "concave")
RELIABILITIES = ("p50", "p80")


class RequestError(ValidationError):
    """A forecast request failed validation; ``field`` names the culprit."""

    def __init__(self, field_name: str, message: str):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


@dataclass(frozen=True)
class ForecastRequest:
    years: tuple[float, ...]
    values: tuple[float, ...]
    unit: str
    reliability: str
    model: str
    thresholds_minutes: tuple[float, ...] | None
    calibration_window: tuple[float, float] | None

    def to_payload(self) -> dict:
        payload = {
            "path": [
                {"year": y, "value": v} for y, v in zip(self.years, self.values)
            ],
            "unit": self.unit,
            "reliability": self.reliability,
            "model": self.model,
        }
        if self.thresholds_minutes is not None:
            payload["thresholds_minutes"] = list(self.thresholds_minutes)
        if self.calibration_window is not None:
            payload["calibration_window"] = list(self.calibration_window)
        return payload


def _check_number(value, field_name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise RequestError(field_name, f"expected a number, got {value!r}")
    v = float(value)
    if not math.isfinite(v):
        raise RequestError(field_name, "must be finite")
    return v


def parse_forecast_request(payload, max_knots: int = 500) -> ForecastRequest:
    """Validate a request payload, reporting the offending field on error."""
    if not isinstance(payload, dict):
        raise RequestError("body", "expected a JSON object")
    path = payload.get("path")
    if not isinstance(path, list) or len(path) < 2:
        raise RequestError("path", "expected a list of at least 2 knots")
    if len(path) > max_knots:
        raise RequestError("path", f"at most {max_knots} knots allowed")
    years, values = [], []
    for i, knot in enumerate(path):
        if not isinstance(knot, dict):
            raise RequestError(f"path[{i}]", "expected an object")
        years.append(_check_number(knot.get("year"), f"path[{i}].year"))
        value = _check_number(knot.get("value"), f"path[{i}].value")
        if value <= 0:
            raise RequestError(f"path[{i}].value", "must be positive")
        values.append(value)
    for i in range(1, len(years)):
        if years[i] <= years[i - 1]:
            raise RequestError(f"path[{i}].year", "years must be strictly increasing")

    unit = payload.get("unit", "flop")
    if unit not in UNITS:
        raise RequestError("unit", f"expected one of {list(UNITS)}")
    reliability = payload.get("reliability", "p50")
    if reliability not in RELIABILITIES:
        raise RequestError("reliability", f"expected one of {list(RELIABILITIES)}")
    model = payload.get("model", "linear")
    if model not in MODELS:
        raise RequestError("model", f"expected one of {list(MODELS)}")

    thresholds = payload.get("thresholds_minutes")
    if thresholds is not None:
        if not isinstance(thresholds, list) or not thresholds:
            raise RequestError("thresholds_minutes", "expected a non-empty list")
        parsed = []
        for i, value in enumerate(thresholds):
            v = _check_number(value, f"thresholds_minutes[{i}]")
            if v <= 0:
                raise RequestError(f"thresholds_minutes[{i}]", "must be positive")
            parsed.append(v)
        thresholds = tuple(parsed)

    window = payload.get("calibration_window")
    if window is not None:
        if not isinstance(window, list) or len(window) != 2:
            raise RequestError("calibration_window", "expected [start, end]")
        start = _check_number(window[0], "calibration_window[0]")
        end = _check_number(window[1], "calibration_window[1]")
        if not end > start:
            raise RequestError("calibration_window", "end must exceed start")
        window = (start, end)

    return ForecastRequest(
        years=tuple(years),
        values=tuple(values),
        unit=unit,
        reliability=reliability,
        model=model,
        thresholds_minutes=thresholds,
        calibration_window=window,
    )


@dataclass
class ForecastEngine:
    """Immutable fixture bundle plus per-reliability cached calibrations."""

    config: Config
    dataset: Dataset
    _concave_fit: ConcaveFit | None = field(default=None, repr=False)
    _lob: dict = field(default_factory=dict, repr=False)

    def concave_fit(self) -> ConcaveFit:
        if self._concave_fit is None:
            self._concave_fit = fit_concave(
                self.dataset.family_benchmarks,
                compute_transform="chinchilla_adjusted",
                chinchilla=self.config.chinchilla,
            )
        return self._concave_fit

    def lambda_over_beta(self, reliability: str) -> float:
        if reliability not in self._lob:
            self._lob[reliability] = fit_lambda_over_beta_concave(
                self.dataset.horizons,
                self.dataset.compute_history,
                self.concave_fit(),
                s_c=self.config.growth.training_share,
                reliability=reliability,
            )
        return self._lob[reliability]

    def calibration(
        self, reliability: str, window: tuple[float, float] | None = None
    ) -> CalibrationResult:
        return calibrate(
            self.dataset.horizons,
            self.dataset.compute_history,
            reliability=reliability,
            window=window or self.config.calibration_window,
        )

    def request_path(self, req: ForecastRequest) -> ComputePath:
        years = np.array(req.years)
        values = np.array(req.values)
        if req.unit == "usd_2025":
            return usd_to_flop_path(
                TimeSeries(years, values), self.dataset.flop_per_usd
            )
        return ComputePath(years, np.log10(values))

    def milestones_for(self, req: ForecastRequest) -> list[Milestone]:
        if req.thresholds_minutes is None:
            return [
                Milestone(m.label, m.threshold_minutes, req.reliability)
                for m in self.config.milestones
            ]
        ladder = {m.threshold_minutes: m.label for m in self.config.milestones}
        return [
            Milestone(ladder.get(v, f"{v:g} min"), v, req.reliability)
            for v in req.thresholds_minutes
        ]

    def run(self, req: ForecastRequest, end_year: float | None = None) -> ForecastResult:
        cal = self.calibration(req.reliability, req.calibration_window)
        end = end_year if end_year is not None else self.config.forecast_end_year
        path = self.request_path(req)
        trend = trend_horizon(cal, end)
        if req.model == "concave":
            growth = GrowthParams.with_training_share(
                gamma=self.config.growth.gamma,
                lambda_over_beta=self.lambda_over_beta(req.reliability),
                s_c=self.config.growth.training_share,
            )
            horizon = forecast_horizon_concave(cal, path, self.concave_fit(), growth, end)
        else:
            horizon = forecast_horizon(cal, path, end)
        delays = milestone_delays(trend, horizon, self.milestones_for(req))
        return ForecastResult(
            horizon_path=horizon, trend_path=trend, milestones=delays, calibration=cal
        )


def _series_payload(series: TimeSeries) -> list[dict]:
    return [
        {"year": float(t), "minutes": float(v)}
        for t, v in zip(series.times, series.values)
    ]


def result_to_response(result: ForecastResult) -> dict:
    """ForecastResult -> response payload with the exact wire field names."""
    return {
        "horizon_path": _series_payload(result.horizon_path),
        "trend_path": _series_payload(result.trend_path),
        "milestones": [
            {
                "label": d.milestone.label,
                "threshold_minutes": d.milestone.threshold_minutes,
                "date_trend": d.date_trend,
                "date_forecast": d.date_forecast,
                "delay_years": d.delay_years,
            }
            for d in result.milestones
        ],
        "calibration": {
            "c": result.calibration.c,
            "past_gY": result.calibration.past_g_y,
            "past_gK": result.calibration.past_g_k,
        },
    }


def dumps_response(payload: dict) -> bytes:
    """Compact, deterministic JSON encoding shared by CLI and service."""
    return json.dumps(payload, separators=(",", ":"), allow_nan=False).encode("utf-8")


def forecast_csv(result: ForecastResult) -> str:
    """Tidy (year, trend_minutes, forecast_minutes) table for plotting."""
    lines = ["year,trend_minutes,forecast_minutes"]
    for t, trend_v, fc_v in zip(
        result.trend_path.times, result.trend_path.values, result.horizon_path.values
    ):
        lines.append(f"{float(t)!r},{float(trend_v)!r},{float(fc_v)!r}")
    return "\n".join(lines) + "\n"
