/** DOM wiring for the what-if client.
 *
 * All forecasting math lives on the server. This file moves state
 * between the editor widgets and the API client: drag/add/remove knots,
 * keep the numeric entry table in sync with the chart, auto-run
 * (debounced) on drag end, render the returned paths and milestone
 * table, and surface field-level API errors inline.
 */

import { ForecastClient } from "./api.js";
import {
  DEFAULT_VIEWPORT,
  horizonChartSvg,
  pathEditorSvg,
  placeKnots,
} from "./chart.js";
import { formatValue } from "./format.js";
import { requestBody, scenarioToRequest } from "./serialize.js";
import {
  addKnot,
  canRun,
  dragKnotValue,
  initialState,
  removeKnot,
  setModel,
  setReliability,
  setUnit,
  updateKnotYear,
  withResponse,
  type Edit,
  type ScenarioState,
} from "./state.js";
import { renderMilestoneTable } from "./table.js";
import type { DefaultsResponse, ModelKind, Reliability, Unit } from "./types.js";

const client = new ForecastClient("");
let state: ScenarioState | null = null;
let defaults: DefaultsResponse | null = null;
let runTimer: number | undefined;

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

function setStatus(text: string, isError = false): void {
  const node = el<HTMLDivElement>("status");
  node.textContent = text;
  node.className = isError ? "status error" : "status";
}

function apply(edit: Edit): void {
  if (!edit.ok) {
    setStatus(edit.message ?? "rejected", true);
    return;
  }
  state = edit.state;
  renderEditor();
  scheduleRun();
}

function scheduleRun(delayMs = 250): void {
  window.clearTimeout(runTimer);
  runTimer = window.setTimeout(() => void runForecast(), delayMs);
}

async function runForecast(): Promise<void> {
  if (!state || !canRun(state)) return;
  setStatus("running…");
  const outcome = await client.forecast(scenarioToRequest(state));
  if (outcome.kind === "stale") return;
  if (outcome.kind === "error") {
    setStatus(`${outcome.field}: ${outcome.message}`, true);
    return;
  }
  state = withResponse(state, outcome.response);
  setStatus(`c = ${outcome.response.calibration.c.toFixed(3)}`);
  renderResult();
}

function renderEditor(): void {
  if (!state) return;
  el<HTMLDivElement>("editor-chart").innerHTML = pathEditorSvg(state.knots);
  bindKnotDrag();
  const rows = state.knots
    .map(
      (k, i) =>
        `<tr><td><input class="year" data-index="${i}" value="${k.year}"/></td>` +
        `<td><input class="value" data-index="${i}" value="${formatValue(k.value)}"/></td>` +
        `<td><button class="remove" data-index="${i}">×</button></td></tr>`,
    )
    .join("");
  el<HTMLTableSectionElement>("knot-rows").innerHTML = rows;
  el<HTMLButtonElement>("run").disabled = !canRun(state);
  el<HTMLSpanElement>("unit-label").textContent =
    state.unit === "usd_2025" ? "2025 USD / year" : "FLOP / year";
  bindTableInputs();
}

function renderResult(): void {
  if (!state?.lastResponse) return;
  el<HTMLDivElement>("result-chart").innerHTML = horizonChartSvg(
    state.lastResponse, defaults, state.reliability,
  );
  el<HTMLDivElement>("milestones").innerHTML = renderMilestoneTable(
    state.lastResponse,
  );
  el<HTMLPreElement>("request-preview").textContent = requestBody(state);
}

function bindKnotDrag(): void {
  const svg = el<HTMLDivElement>("editor-chart").querySelector("svg");
  if (!svg || !state) return;
  svg.querySelectorAll<SVGCircleElement>("circle.knot").forEach((circle) => {
    circle.addEventListener("pointerdown", (down) => {
      down.preventDefault();
      const index = Number(circle.dataset.index);
      const bounds = svg.getBoundingClientRect();
      const scaleY = DEFAULT_VIEWPORT.height / bounds.height;

      const move = (ev: PointerEvent) => {
        if (!state) return;
        const py = (ev.clientY - bounds.top) * scaleY;
        const { invertValue } = placeKnots(state.knots);
        const edit = dragKnotValue(state, index, invertValue(py));
        if (edit.ok) {
          state = edit.state;
          renderEditor();
        }
      };
      const up = () => {
        window.removeEventListener("pointermove", move);
        window.removeEventListener("pointerup", up);
        scheduleRun();  // auto-run on drag end, not on every pixel
      };
      window.addEventListener("pointermove", move);
      window.addEventListener("pointerup", up);
    });
  });
}

function bindTableInputs(): void {
  el<HTMLTableSectionElement>("knot-rows")
    .querySelectorAll<HTMLInputElement>("input.year")
    .forEach((input) => {
      input.addEventListener("change", () => {
        if (!state) return;
        apply(updateKnotYear(state, Number(input.dataset.index),
                             Number(input.value)));
      });
    });
  el<HTMLTableSectionElement>("knot-rows")
    .querySelectorAll<HTMLInputElement>("input.value")
    .forEach((input) => {
      input.addEventListener("change", () => {
        if (!state) return;
        apply(dragKnotValue(state, Number(input.dataset.index),
                            Number(input.value)));
      });
    });
  el<HTMLTableSectionElement>("knot-rows")
    .querySelectorAll<HTMLButtonElement>("button.remove")
    .forEach((button) => {
      button.addEventListener("click", () => {
        if (!state) return;
        apply(removeKnot(state, Number(button.dataset.index)));
      });
    });
}

function bindControls(): void {
  el<HTMLButtonElement>("run").addEventListener("click", () => void runForecast());
  el<HTMLButtonElement>("add-knot").addEventListener("click", () => {
    if (!state) return;
    const last = state.knots[state.knots.length - 1];
    const knot = last
      ? { year: last.year + 1, value: last.value }
      : { year: 2026, value: 1e26 };
    apply(addKnot(state, knot));
  });
  el<HTMLSelectElement>("unit").addEventListener("change", (ev) => {
    if (!state) return;
    apply(setUnit(state, (ev.target as HTMLSelectElement).value as Unit));
  });
  el<HTMLSelectElement>("reliability").addEventListener("change", (ev) => {
    if (!state) return;
    apply(setReliability(
      state, (ev.target as HTMLSelectElement).value as Reliability,
    ));
  });
  el<HTMLSelectElement>("model").addEventListener("change", (ev) => {
    if (!state) return;
    apply(setModel(state, (ev.target as HTMLSelectElement).value as ModelKind));
  });
}

async function boot(): Promise<void> {
  setStatus("loading defaults…");
  try {
    defaults = await client.defaults();
  } catch (err) {
    setStatus(`cannot reach the service: ${String(err)}`, true);
    return;
  }
  state = initialState(defaults.default_path.path, defaults.default_path.unit);
  el<HTMLSelectElement>("unit").value = state.unit;
  bindControls();
  renderEditor();
  scheduleRun(0);
}

void boot();
