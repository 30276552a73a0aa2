/** Milestone table construction.
 *
 * Every numeric cell is copied from a response field (no client-side
 * forecasting): raw values are kept alongside the formatted strings so
 * tests can trace each rendered number back to the response document.
 */

import { formatDelay, formatYear } from "./format.js";
import type { ForecastResponse } from "./types.js";

export interface MilestoneTableRow {
  label: string;
  thresholdMinutes: number;
  dateTrend: number | null;
  dateForecast: number | null;
  delayYears: number | null;
  display: {
    threshold: string;
    dateTrend: string;
    dateForecast: string;
    delay: string;
  };
}

export function buildMilestoneRows(response: ForecastResponse): MilestoneTableRow[] {
  return response.milestones.map((m) => ({
    label: m.label,
    thresholdMinutes: m.threshold_minutes,
    dateTrend: m.date_trend,
    dateForecast: m.date_forecast,
    delayYears: m.delay_years,
    display: {
      threshold: `${m.threshold_minutes} min`,
      dateTrend: formatYear(m.date_trend),
      dateForecast: formatYear(m.date_forecast),
      delay: formatDelay(m.delay_years),
    },
  }));
}

export function renderMilestoneTable(response: ForecastResponse): string {
  const rows = buildMilestoneRows(response)
    .map(
      (r) => `<tr><td>${r.label}</td><td>${r.display.threshold}</td>` +
        `<td>${r.display.dateTrend}</td><td>${r.display.dateForecast}</td>` +
        `<td>${r.display.delay}</td></tr>`,
    )
    .join("");
  return (
    "<table class=\"milestones\"><thead><tr>" +
    "<th>Milestone</th><th>Threshold</th><th>Trend</th>" +
    "<th>Forecast</th><th>Delay</th></tr></thead>" +
    `<tbody>${rows}</tbody></table>`
  );
}
