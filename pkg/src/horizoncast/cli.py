"""Command-line front end.

Exit codes: 0 success, 2 input error (bad files, bad values, bad flags),
3 computation error (solver, calibration or integration failures).
Randomized commands require an explicit --seed; there is no wall-clock
seeding anywhere.
"""

from __future__ import annotations

import functools
import json
import sys
from pathlib import Path

import click
import numpy as np

from . import __version__
from .algprogress import bootstrap_ci, estimate_trend_slopes
from .chinchilla import equivalent_optimal_compute, loss, optimal_compute_for_loss, raw_compute
from .config import Config, load_config, load_dataset
from .core import ComputePath
from .csvio import parse_csv
from .errors import ComputationError, InputError, ValidationError
from .growth import JonesParams, exponential_input, simulate_jones
from .report import (
    ForecastEngine,
    dumps_response,
    forecast_csv,
    parse_forecast_request,
    result_to_response,
)
from .scaling import fit_concave, fit_shared_slope

_TRANSFORMS = {"raw": "raw", "chinchilla": "chinchilla_adjusted"}


def _handle_errors(fn):
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except (InputError, FileNotFoundError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(2)
        except ComputationError as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text)


@click.group()
@click.version_option(__version__, prog_name="horizoncast")
@click.option(
    "--config", "config_path", envvar="HORIZON_CONFIG", default=None,
    help="Config JSON path (defaults to the bundled configuration).",
)
@click.pass_context
def main(ctx, config_path):
    """Convert projected AI R&D compute paths into time-horizon forecasts."""
    ctx.ensure_object(dict)
    ctx.obj["config_path"] = config_path


def _config(ctx) -> Config:
    return load_config(ctx.obj.get("config_path"))


@main.command()
@click.option("--data", "data_path", default=None,
              help="family_benchmarks CSV (defaults to the bundled fixture).")
@click.option("--transform", type=click.Choice(["raw", "chinchilla"]), default="raw")
@click.option("--concave", is_flag=True, help="Fit the Box-Cox concave model.")
@click.option("--cluster", type=click.Choice(["family"]), default="family",
              help="Cluster level for the slope standard error.")
@click.option("--out", default=None, help="Write the JSON report here.")
@click.pass_context
@_handle_errors
def fit(ctx, data_path, transform, concave, cluster, out):
    """Estimate the compute-horizon elasticity on a family benchmark panel."""
    config = _config(ctx)
    path = Path(data_path) if data_path else config.data_paths["family_benchmarks"]
    if not path.is_file():
        click.echo(f"error: data file not found: {path}", err=True)
        sys.exit(2)
    obs = parse_csv("family_benchmarks", path.read_bytes())
    if concave:
        report = fit_concave(
            obs, _TRANSFORMS[transform], chinchilla=config.chinchilla
        ).to_report()
    else:
        report = fit_shared_slope(
            obs, _TRANSFORMS[transform], chinchilla=config.chinchilla
        ).to_report()
    _emit(json.dumps(report, indent=2, sort_keys=False), out)


def _load_future_path(path_arg, path_json, unit, engine):
    if path_json:
        knots = json.loads(path_json)
        payload = {"path": knots, "unit": unit}
        return payload
    if path_arg:
        records = parse_csv("compute_spend", Path(path_arg).read_bytes())
        units = {r.unit for r in records}
        if len(units) != 1:
            raise ValidationError(
                f"future path {path_arg}: expected a single unit, got {sorted(units)}"
            )
        wire_unit = "usd_2025" if units.pop() == "usd" else "flop"
        return {
            "path": [{"year": r.year, "value": r.value} for r in records],
            "unit": wire_unit,
        }
    dataset = engine.dataset
    proj_unit = "usd_2025" if engine.dataset.projection_unit == "usd" else "flop"
    if proj_unit == "usd_2025":
        records = parse_csv(
            "compute_spend", engine.config.data_paths["projection"].read_bytes()
        )
        return {
            "path": [{"year": r.year, "value": r.value} for r in records],
            "unit": "usd_2025",
        }
    knots = [
        {"year": float(t), "value": float(10.0 ** v)}
        for t, v in zip(dataset.projection.years, dataset.projection.log10_flop)
    ]
    return {"path": knots, "unit": "flop"}


@main.command()
@click.option("--horizons", "horizons_path", default=None,
              help="Horizon history CSV (defaults to the bundled fixture).")
@click.option("--path", "path_arg", default=None,
              help="Future compute path CSV (compute_spend schema).")
@click.option("--path-json", default=None,
              help='Inline JSON future path: [{"year": ..., "value": ...}, ...].')
@click.option("--unit", type=click.Choice(["flop", "usd"]), default="flop",
              help="Unit of an inline --path-json path.")
@click.option("--reliability", type=click.Choice(["p50", "p80"]), default="p50")
@click.option("--model", type=click.Choice(["linear", "concave"]), default="linear")
@click.option("--end-year", type=float, default=None)
@click.option("--window", nargs=2, type=float, default=None,
              help="Calibration window (start end).")
@click.option("--thresholds", default=None,
              help="Comma-separated milestone thresholds in minutes.")
@click.option("--out", default=None, help="Write the forecast JSON here.")
@click.option("--csv-out", default=None, help="Write the tidy plot CSV here.")
@click.pass_context
@_handle_errors
def forecast(ctx, horizons_path, path_arg, path_json, unit, reliability, model,
             end_year, window, thresholds, out, csv_out):
    """Project the time-horizon path implied by a future compute path."""
    config = _config(ctx)
    dataset = load_dataset(config)
    if horizons_path:
        dataset = _replace_horizons(dataset, Path(horizons_path))
    engine = ForecastEngine(config, dataset)

    payload = _load_future_path(path_arg, path_json, _wire_unit(unit), engine)
    payload["reliability"] = reliability
    payload["model"] = model
    if thresholds:
        payload["thresholds_minutes"] = [float(v) for v in thresholds.split(",")]
    if window:
        payload["calibration_window"] = [window[0], window[1]]

    req = parse_forecast_request(payload, max_knots=config.max_knots)
    result = engine.run(req, end_year=end_year)
    body = dumps_response(result_to_response(result))
    if out:
        Path(out).write_bytes(body)
    else:
        click.echo(body.decode("utf-8"))
    if csv_out:
        Path(csv_out).write_text(forecast_csv(result), encoding="utf-8")
    _milestone_summary(result)


def _wire_unit(unit: str) -> str:
    return "usd_2025" if unit == "usd" else "flop"


def _replace_horizons(dataset, path: Path):
    import dataclasses

    horizons = parse_csv("horizons", path.read_bytes())
    return dataclasses.replace(dataset, horizons=horizons)


def _milestone_summary(result):
    for d in result.milestones:
        if d.flag == ">span":
            note = "not reached within the forecast span (>span)"
        elif d.delay_years is None:
            note = "not reached under the trend"
        else:
            note = f"delay {d.delay_years:+.2f} years"
        click.echo(
            f"# {d.milestone.label} ({d.milestone.threshold_minutes:g} min): {note}",
            err=True,
        )


@main.command()
@click.option("--data", "data_path", default=None,
              help="Horizons CSV with compute estimates (bundled fixture default).")
@click.option("--reliability", type=click.Choice(["p50", "p80"]), default="p50")
@click.option("--gamma", type=float, default=None,
              help="Elasticity estimate (defaults to the adjusted shared-slope fit).")
@click.option("--gamma-se", type=float, default=None,
              help="Elasticity SE (defaults to the fit's clustered SE).")
@click.option("--n", type=int, default=10000, show_default=True)
@click.option("--seed", type=int, required=True)
@click.option("--out", default=None)
@click.pass_context
@_handle_errors
def algprogress(ctx, data_path, reliability, gamma, gamma_se, n, seed, out):
    """Estimate the algorithmic-progress rate with a bootstrap interval."""
    config = _config(ctx)
    path = Path(data_path) if data_path else config.data_paths["horizons"]
    obs = parse_csv("horizons", path.read_bytes())
    if gamma is None or gamma_se is None:
        family = parse_csv(
            "family_benchmarks", config.data_paths["family_benchmarks"].read_bytes()
        )
        fit_result = fit_shared_slope(
            family, "chinchilla_adjusted", chinchilla=config.chinchilla
        )
        gamma = fit_result.gamma if gamma is None else gamma
        gamma_se = fit_result.se_gamma_clustered if gamma_se is None else gamma_se
    g_y, g_c = estimate_trend_slopes(obs, reliability)
    click.echo(
        f"# gY={g_y:.4f}/yr gC={g_c:.4f}/yr gamma={gamma:.4f} (se {gamma_se:.4f})",
        err=True,
    )
    estimate = bootstrap_ci(obs, gamma, gamma_se, n=n, seed=seed,
                            reliability=reliability)
    _emit(json.dumps(estimate.to_report(), indent=2), out)


@main.command()
@click.option("--scenario", "scenario_path", required=True,
              help="JSON scenario: {A0, k, beta, lambda, E0, gE|path, t0, t1, dt}.")
@click.option("--out", default=None, help="Write the A(t) series CSV here.")
@click.pass_context
@_handle_errors
def simulate(ctx, scenario_path, out):
    """Integrate the ideas-production dynamics and emit the A(t) series."""
    raw = json.loads(Path(scenario_path).read_text(encoding="utf-8"))
    params = JonesParams(
        scale=float(raw.get("k", 1.0)),
        beta=float(raw["beta"]),
        lam=float(raw["lambda"]),
    )
    t0, t1, dt = float(raw["t0"]), float(raw["t1"]), float(raw["dt"])
    if "path" in raw:
        knots = raw["path"]
        path = ComputePath(
            np.array([k["year"] for k in knots]),
            np.array([k["log10_flop"] for k in knots]),
        )
        series = simulate_jones(
            float(raw["A0"]), path, params, (t0, t1), dt,
            s_e=float(raw.get("s_e", 1.0)),
        )
    else:
        e_fn = exponential_input(float(raw["E0"]), float(raw["gE"]), t0)
        series = simulate_jones(float(raw["A0"]), e_fn, params, (t0, t1), dt)
    lines = ["year,A"] + [f"{float(t)!r},{float(a)!r}" for t, a in series.points()]
    _emit("\n".join(lines) + "\n", out)


@main.command()
@click.option("--params", "n_params", type=float, required=True,
              help="Parameter count N.")
@click.option("--tokens", "n_tokens", type=float, required=True,
              help="Training token count D.")
@click.pass_context
@_handle_errors
def chinchilla(ctx, n_params, n_tokens):
    """Loss and compute-optimal equivalent compute for an (N, D) allocation."""
    config = _config(ctx)
    p = config.chinchilla
    value = loss(p, n_params, n_tokens)
    optimal = optimal_compute_for_loss(p, value)
    report = {
        "loss": value,
        "raw_flop": raw_compute(n_params, n_tokens),
        "equivalent_flop": equivalent_optimal_compute(p, n_params, n_tokens),
        "optimal": {
            "flop": optimal.flop,
            "n_params": optimal.n_params,
            "n_tokens": optimal.n_tokens,
        },
    }
    click.echo(json.dumps(report, indent=2))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=None,
              help="Defaults to the configured service port.")
@click.option("--ui", "ui_dir", default=None,
              help="Directory with the built web client to serve at /.")
@click.pass_context
@_handle_errors
def serve(ctx, host, port, ui_dir):
    """Run the stateless JSON forecasting service."""
    import uvicorn

    from .service import create_app

    config = _config(ctx)
    if ui_dir is not None and not Path(ui_dir).is_dir():
        click.echo(f"error: UI directory not found: {ui_dir}", err=True)
        sys.exit(2)
    app = create_app(config, ui_dir=ui_dir)
    uvicorn.run(app, host=host, port=port if port is not None else config.service_port)


if __name__ == "__main__":
    main()
