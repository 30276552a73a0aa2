"""Stateless JSON HTTP service.

Fixtures are loaded once at startup and treated as immutable; every
request is then a pure function of (request body, fixtures, config).
Responses for POST /api/forecast are emitted through the same serializer
as the CLI, so the two produce byte-identical documents.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request, Response
from fastapi.responses import JSONResponse

from .config import Config, load_config, load_dataset
from .errors import ComputationError, InsufficientDataError
from .report import (
    RELIABILITIES,
    ForecastEngine,
    RequestError,
    dumps_response,
    parse_forecast_request,
    result_to_response,
)


def _defaults_payload(engine: ForecastEngine) -> dict:
    config, dataset = engine.config, engine.dataset
    calibrations = {}
    for rel in RELIABILITIES:
        try:
            cal = engine.calibration(rel)
        except InsufficientDataError:
            continue
        calibrations[rel] = {
            "c": cal.c,
            "past_gY": cal.past_g_y,
            "past_gK": cal.past_g_k,
            "anchor_year": cal.anchor_t,
            "anchor_minutes": cal.anchor_minutes,
        }
    horizon_points = []
    for o in dataset.horizons:
        for rel in RELIABILITIES:
            minutes = o.horizon(rel)
            if minutes is not None:
                horizon_points.append(
                    {"year": o.release, "minutes": minutes, "reliability": rel,
                     "model_id": o.model_id}
                )
    default_path = [
        {"year": r.year, "value": r.value}
        for r in _projection_records(config)
    ]
    return {
        "milestones": [
            {"label": m.label, "threshold_minutes": m.threshold_minutes}
            for m in config.milestones
        ],
        "calibration_window": list(config.calibration_window),
        "calibrations": calibrations,
        "end_year": config.forecast_end_year,
        "max_knots": config.max_knots,
        "default_path": {"unit": _wire_unit(dataset.projection_unit),
                         "path": default_path},
        "history": {
            "horizons": horizon_points,
            "compute_path": [
                {"year": float(t), "log10_flop": float(v)}
                for t, v in zip(dataset.compute_history.years,
                                dataset.compute_history.log10_flop)
            ],
        },
    }


def _wire_unit(unit: str) -> str:
    return "usd_2025" if unit == "usd" else "flop"


def _projection_records(config: Config):
    from .csvio import parse_csv

    return parse_csv("compute_spend", config.data_paths["projection"].read_bytes())


def create_app(config: Config | None = None, ui_dir: str | None = None) -> FastAPI:
    """Build the service; fixture loading and fitting happen here, once.

    ``ui_dir`` optionally mounts a built web client at the root path.
    """
    config = config or load_config()
    engine = ForecastEngine(config, load_dataset(config))
    # Warm every cache the request path can touch so requests stay pure.
    for rel in RELIABILITIES:
        try:
            engine.lambda_over_beta(rel)
        except (InsufficientDataError, ComputationError):
            pass
    defaults_body = json.dumps(_defaults_payload(engine)).encode("utf-8")

    app = FastAPI(title="horizoncast", version="0.1.0", docs_url=None, redoc_url=None)

    @app.get("/api/health")
    def health():
        return {"status": "ok"}

    @app.get("/api/defaults")
    def defaults():
        return Response(content=defaults_body, media_type="application/json")

    @app.post("/api/forecast")
    async def forecast(request: Request):
        try:
            payload = await request.json()
        except json.JSONDecodeError as exc:
            return JSONResponse(
                status_code=400,
                content={"error": {"field": "body", "message": f"invalid JSON: {exc}"}},
            )
        try:
            req = parse_forecast_request(payload, max_knots=config.max_knots)
            result = engine.run(req)
        except RequestError as exc:
            return JSONResponse(
                status_code=400,
                content={"error": {"field": exc.field, "message": str(exc)}},
            )
        except InsufficientDataError as exc:
            return JSONResponse(
                status_code=400,
                content={"error": {"field": "calibration_window", "message": str(exc)}},
            )
        except ComputationError as exc:
            return JSONResponse(
                status_code=422,
                content={"error": {"field": "path", "message": str(exc)}},
            )
        return Response(
            content=dumps_response(result_to_response(result)),
            media_type="application/json",
        )

    if ui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app
