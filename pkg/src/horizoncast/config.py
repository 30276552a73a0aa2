"""Configuration loading and bundled-fixture access.

A single JSON file carries every tunable constant: Chinchilla loss
constants, growth-parameter defaults, the milestone ladder, the
calibration window, fixture file locations (resolved relative to the
config file) and service settings. Resolution order for the file itself:
explicit path argument, the HORIZON_CONFIG environment variable, then
the bundled default.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from .chinchilla import ChinchillaParams
from .core import ComputePath, HorizonObservation, ModelBenchmarkObservation, TimeSeries
from .csvio import flop_per_usd_series, parse_csv, spend_to_series
from .errors import ConfigError, InputError, ValidationError
from .forecast import Milestone, usd_to_flop_path

ENV_VAR = "HORIZON_CONFIG"

_DATA_KEYS = ("horizons", "compute_spend", "flop_per_usd", "family_benchmarks",
              "projection")


@dataclass(frozen=True)
class GrowthDefaults:
    gamma: float
    lambda_over_beta: float
    alpha: float
    training_share: float


@dataclass(frozen=True)
class JonesDefaults:
    scale: float
    beta: float  # not identified by the calibration; a config choice


@dataclass(frozen=True)
class Config:
    chinchilla: ChinchillaParams
    growth: GrowthDefaults
    jones: JonesDefaults
    milestones: list[Milestone]
    calibration_window: tuple[float, float]
    data_paths: dict[str, Path]
    service_port: int
    max_knots: int
    forecast_end_year: float
    default_reliability: str
    source: Path | None = None


def default_config_path() -> Path:
    return Path(str(resources.files("horizoncast").joinpath("data/config.json")))


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise ConfigError(f"{where}: missing key {key!r}")
    return obj[key]


def load_config(path: str | os.PathLike | None = None) -> Config:
    """Load and validate a config file; see module docstring for lookup order."""
    if path is None:
        env = os.environ.get(ENV_VAR)
        path = Path(env) if env else default_config_path()
    path = Path(path)
    if not path.is_file():
        raise ConfigError(f"config file not found: {path}")
    try:
        raw = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"{path}: invalid JSON ({exc})") from exc

    try:
        chin = ChinchillaParams(**_require(raw, "chinchilla", str(path)))
        g = _require(raw, "growth", str(path))
        growth = GrowthDefaults(
            gamma=float(g["gamma"]),
            lambda_over_beta=float(g["lambda_over_beta"]),
            alpha=float(g["alpha"]),
            training_share=float(g["training_share"]),
        )
        j = raw.get("jones", {})
        jones = JonesDefaults(scale=float(j.get("scale", 1.0)),
                              beta=float(j.get("beta", 0.5)))
        milestones = [
            Milestone(label=str(m["label"]), threshold_minutes=float(m["minutes"]))
            for m in _require(raw, "milestones", str(path))
        ]
        window = tuple(float(v) for v in _require(raw, "calibration_window", str(path)))
        if len(window) != 2 or not window[1] > window[0]:
            raise ConfigError(f"{path}: calibration_window must be [start, end]")
        svc = raw.get("service", {})
        fc = raw.get("forecast", {})
    except (KeyError, TypeError, ValueError, ValidationError) as exc:
        raise ConfigError(f"{path}: {exc}") from exc

    data_raw = _require(raw, "data", str(path))
    data_paths: dict[str, Path] = {}
    for key in _DATA_KEYS:
        rel = _require(data_raw, key, f"{path}:data")
        resolved = (path.parent / rel).resolve()
        if not resolved.is_file():
            raise ConfigError(f"{path}: data file for {key!r} not found: {resolved}")
        data_paths[key] = resolved

    return Config(
        chinchilla=chin,
        growth=growth,
        jones=jones,
        milestones=milestones,
        calibration_window=(window[0], window[1]),
        data_paths=data_paths,
        service_port=int(svc.get("port", 8350)),
        max_knots=int(svc.get("max_knots", 500)),
        forecast_end_year=float(fc.get("end_year", 2045.0)),
        default_reliability=str(fc.get("reliability", "p50")),
        source=path,
    )


@dataclass(frozen=True)
class Dataset:
    """The fixture bundle a forecast run works from."""

    horizons: list[HorizonObservation]
    family_benchmarks: list[ModelBenchmarkObservation]
    flop_per_usd: TimeSeries
    compute_history: ComputePath
    spend_unit: str
    projection: ComputePath
    projection_unit: str

    @property
    def p50(self) -> list[HorizonObservation]:
        return [o for o in self.horizons if o.p50_minutes is not None]


def _spend_path(path: Path, fpd: TimeSeries) -> tuple[ComputePath, str]:
    unit, series = spend_to_series(parse_csv("compute_spend", path.read_bytes()))
    if unit == "usd":
        return usd_to_flop_path(series, fpd), unit
    import numpy as np

    return ComputePath(series.times, np.log10(series.values)), unit


def load_dataset(config: Config) -> Dataset:
    """Parse every fixture referenced by the config."""
    try:
        horizons = parse_csv(
            "horizons", config.data_paths["horizons"].read_bytes()
        )
        family = parse_csv(
            "family_benchmarks", config.data_paths["family_benchmarks"].read_bytes()
        )
        fpd = flop_per_usd_series(
            parse_csv("flop_per_usd", config.data_paths["flop_per_usd"].read_bytes())
        )
        history, spend_unit = _spend_path(config.data_paths["compute_spend"], fpd)
        projection, proj_unit = _spend_path(config.data_paths["projection"], fpd)
    except InputError as exc:
        raise ConfigError(f"failed to load fixtures: {exc}") from exc
    return Dataset(
        horizons=horizons,
        family_benchmarks=family,
        flop_per_usd=fpd,
        compute_history=history,
        spend_unit=spend_unit,
        projection=projection,
        projection_unit=proj_unit,
    )
