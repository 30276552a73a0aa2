"""Record the frontend's oracle fixtures by driving the real CLI.

Three scenarios (a trend-continuation identity path, the bundled
slowing-growth path pre-converted to FLOP, and a hand-authored USD
path) are run through ``horizoncast forecast``; the exact request
payloads and response bytes land in frontend/tests/fixtures/ together
with the service defaults document. The frontend test suite treats
these files as the source of truth for every number it renders.

Usage: python3 scripts/record_scenarios.py
"""

from __future__ import annotations

import json
import math
import subprocess
import sys
from pathlib import Path

import horizoncast as hc
from horizoncast.report import ForecastEngine
from horizoncast.service import _defaults_payload

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "frontend" / "tests" / "fixtures"


def run_cli_forecast(payload: dict, out: Path):
    args = [
        sys.executable, "-m", "horizoncast.cli", "forecast",
        "--path-json", json.dumps(payload["path"]),
        "--unit", "usd" if payload["unit"] == "usd_2025" else "flop",
        "--reliability", payload.get("reliability", "p50"),
        "--model", payload.get("model", "linear"),
        "--out", str(out),
    ]
    subprocess.run(args, check=True, capture_output=True)


def main():
    FIXTURES.mkdir(parents=True, exist_ok=True)
    config = hc.load_config()
    dataset = hc.load_dataset(config)
    engine = ForecastEngine(config, dataset)

    defaults = _defaults_payload(engine)
    (FIXTURES / "defaults.json").write_text(json.dumps(defaults, indent=2))

    cal = engine.calibration("p50")
    slope10 = cal.past_g_k / math.log(10.0)
    scenarios = {
        # continuing the calibrated compute slope: delays must vanish
        "trend_continuation": {
            "path": [
                {"year": 2025.5, "value": 10.0 ** 26.5},
                {"year": 2040.0, "value": 10.0 ** (26.5 + slope10 * 14.5)},
            ],
            "unit": "flop",
            "reliability": "p50",
            "model": "linear",
        },
        # the bundled slowing-growth projection, pre-converted to FLOP
        "slowdown": {
            "path": [
                {"year": float(t), "value": float(10.0 ** v)}
                for t, v in zip(dataset.projection.years,
                                dataset.projection.log10_flop)
            ],
            "unit": "flop",
            "reliability": "p50",
            "model": "linear",
        },
        # dollars in, aggressive then flat, read back at 80% reliability
        "usd_path": {
            "path": [
                {"year": 2025.0, "value": 1.3e10},
                {"year": 2027.0, "value": 6.0e10},
                {"year": 2030.0, "value": 1.5e11},
                {"year": 2035.0, "value": 2.0e11},
            ],
            "unit": "usd_2025",
            "reliability": "p80",
            "model": "linear",
        },
    }
    for name, payload in scenarios.items():
        (FIXTURES / f"{name}.request.json").write_text(
            json.dumps(payload, indent=2)
        )
        run_cli_forecast(payload, FIXTURES / f"{name}.response.json")
        doc = json.loads((FIXTURES / f"{name}.response.json").read_text())
        delays = [m["delay_years"] for m in doc["milestones"]]
        print(f"{name}: delays {delays}")


if __name__ == "__main__":
    main()
