/** Wire types mirroring the service's request/response schemas. */

export type Unit = "flop" | "usd_2025";
export type Reliability = "p50" | "p80";
export type ModelKind = "linear" | "concave";

export interface PathKnot {
  year: number;
  value: number;
}

export interface ForecastRequest {
  path: PathKnot[];
  unit: Unit;
  reliability: Reliability;
  model: ModelKind;
  thresholds_minutes?: number[];
  calibration_window?: [number, number];
}

export interface PathPoint {
  year: number;
  minutes: number;
}

export interface MilestoneRow {
  label: string;
  threshold_minutes: number;
  date_trend: number | null;
  date_forecast: number | null;
  delay_years: number | null;
}

export interface ForecastResponse {
  horizon_path: PathPoint[];
  trend_path: PathPoint[];
  milestones: MilestoneRow[];
  calibration: { c: number; past_gY: number; past_gK: number };
}

export interface DefaultsResponse {
  milestones: { label: string; threshold_minutes: number }[];
  calibration_window: [number, number];
  calibrations: Record<string, {
    c: number;
    past_gY: number;
    past_gK: number;
    anchor_year: number;
    anchor_minutes: number;
  }>;
  end_year: number;
  max_knots: number;
  default_path: { unit: Unit; path: PathKnot[] };
  history: {
    horizons: { year: number; minutes: number; reliability: Reliability;
                model_id: string }[];
    compute_path: { year: number; log10_flop: number }[];
  };
}

export interface ApiError {
  error: { field: string; message: string };
}
