/** Display formatting. Pure presentation: no numbers are invented here,
 * only re-rendered (work-time convention: 8h day, 40h week, 167h month).
 */

const MINUTE_UNITS: [number, string][] = [
  [10020, "work-months"],
  [2400, "work-weeks"],
  [480, "work-days"],
  [60, "hours"],
];

export function humanizeMinutes(minutes: number): string {
  if (!Number.isFinite(minutes)) return String(minutes);
  if (minutes < 1) {
    return `${(minutes * 60).toFixed(0)} sec`;
  }
  for (const [scale, label] of MINUTE_UNITS) {
    if (minutes >= scale) {
      const quantity = minutes / scale;
      const text = quantity >= 10 ? quantity.toFixed(0) : quantity.toFixed(1);
      const clean = text.endsWith(".0") ? text.slice(0, -2) : text;
      const single = label.slice(0, -1);
      return `${clean} ${clean === "1" ? single : label}`;
    }
  }
  return `${minutes >= 10 ? minutes.toFixed(0) : minutes.toFixed(1)} min`;
}

/** Tick labels for a log-minutes axis. */
export function minutesTickLabel(minutes: number): string {
  return humanizeMinutes(minutes);
}

export function formatYear(year: number | null): string {
  if (year === null) return "—";
  return year.toFixed(1);
}

export function formatDelay(delayYears: number | null): string {
  if (delayYears === null) return "not reached";
  return `${delayYears.toFixed(2)} yr`;
}

export function formatValue(value: number): string {
  if (value === 0) return "0";
  const magnitude = Math.floor(Math.log10(Math.abs(value)));
  if (magnitude >= 6 || magnitude <= -4) {
    return value.toExponential(3).replace("e+", "e");
  }
  return String(value);
}
