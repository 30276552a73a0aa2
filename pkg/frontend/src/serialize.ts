/** Scenario -> request JSON, with a bit-stable encoding.
 *
 * Key order is fixed by construction and numbers go through
 * JSON.stringify's shortest-round-trip encoding, so the same scenario
 * always produces the same bytes (golden-file tested).
 */

import type { ScenarioState } from "./state.js";
import type { ForecastRequest } from "./types.js";

export function scenarioToRequest(state: ScenarioState): ForecastRequest {
  return {
    path: state.knots.map((k) => ({ year: k.year, value: k.value })),
    unit: state.unit,
    reliability: state.reliability,
    model: state.model,
  };
}

export function requestBody(state: ScenarioState): string {
  return JSON.stringify(scenarioToRequest(state));
}
