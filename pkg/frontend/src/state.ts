/** Scenario editor state and its pure transition functions.
 *
 * The knot list is kept sorted by year at all times; edits that would
 * break year monotonicity are rejected at entry (the state is returned
 * unchanged with ok=false). Raw entered values are never converted:
 * the unit toggle only re-tags the path, and the tag travels with the
 * request so the server does any USD-to-FLOP conversion.
 */

import type {
  ForecastResponse,
  ModelKind,
  PathKnot,
  Reliability,
  Unit,
} from "./types.js";

export interface ScenarioState {
  knots: PathKnot[];
  unit: Unit;
  reliability: Reliability;
  model: ModelKind;
  lastResponse: ForecastResponse | null;
}

export interface Edit {
  state: ScenarioState;
  ok: boolean;
  message?: string;
}

export function initialState(knots: PathKnot[], unit: Unit): ScenarioState {
  const sorted = [...knots].sort((a, b) => a.year - b.year);
  return {
    knots: sorted,
    unit,
    reliability: "p50",
    model: "linear",
    lastResponse: null,
  };
}

export function canRun(state: ScenarioState): boolean {
  return state.knots.length >= 2;
}

function accepted(state: ScenarioState): Edit {
  return { state, ok: true };
}

function rejected(state: ScenarioState, message: string): Edit {
  return { state, ok: false, message };
}

function yearFits(knots: PathKnot[], year: number, skip: number): boolean {
  return knots.every((k, i) => i === skip || k.year !== year);
}

export function addKnot(state: ScenarioState, knot: PathKnot): Edit {
  if (!Number.isFinite(knot.year) || !Number.isFinite(knot.value)) {
    return rejected(state, "knot must be finite");
  }
  if (knot.value <= 0) {
    return rejected(state, "value must be positive");
  }
  if (!yearFits(state.knots, knot.year, -1)) {
    return rejected(state, `a knot already exists at ${knot.year}`);
  }
  const knots = [...state.knots, { ...knot }].sort((a, b) => a.year - b.year);
  return accepted({ ...state, knots });
}

export function removeKnot(state: ScenarioState, index: number): Edit {
  if (index < 0 || index >= state.knots.length) {
    return rejected(state, "no such knot");
  }
  const knots = state.knots.filter((_, i) => i !== index);
  return accepted({ ...state, knots });
}

/** Vertical drag: changes that knot's value and nothing else. */
export function dragKnotValue(
  state: ScenarioState, index: number, value: number,
): Edit {
  const knot = state.knots[index];
  if (knot === undefined) return rejected(state, "no such knot");
  if (!Number.isFinite(value) || value <= 0) {
    return rejected(state, "value must be positive");
  }
  const knots = state.knots.map((k, i) =>
    i === index ? { year: k.year, value } : k,
  );
  return accepted({ ...state, knots });
}

/** Year edits keep the list strictly monotone or are refused outright. */
export function updateKnotYear(
  state: ScenarioState, index: number, year: number,
): Edit {
  const knot = state.knots[index];
  if (knot === undefined) return rejected(state, "no such knot");
  if (!Number.isFinite(year)) return rejected(state, "year must be finite");
  if (!yearFits(state.knots, year, index)) {
    return rejected(state, `a knot already exists at ${year}`);
  }
  const knots = state.knots
    .map((k, i) => (i === index ? { year, value: k.value } : k))
    .sort((a, b) => a.year - b.year);
  return accepted({ ...state, knots });
}

/** Re-tags the path; entered values are preserved verbatim. */
export function setUnit(state: ScenarioState, unit: Unit): Edit {
  return accepted({ ...state, unit });
}

export function setReliability(state: ScenarioState, reliability: Reliability): Edit {
  return accepted({ ...state, reliability });
}

export function setModel(state: ScenarioState, model: ModelKind): Edit {
  return accepted({ ...state, model });
}

export function withResponse(
  state: ScenarioState, response: ForecastResponse,
): ScenarioState {
  return { ...state, lastResponse: response };
}
