"""horizoncast: compute-path to time-horizon forecasting.

Calibrates a power-law horizon model plus ideas-production algorithmic
progress on historical data, then converts any projected AI R&D compute
path into a projected agent time-horizon path, with milestone crossing
dates and delays against pure trend extrapolation.
"""

__version__ = "0.1.0"

from .algprogress import (
    AlgProgressEstimate,
    alg_progress_point,
    bootstrap_ci,
    estimate_trend_slopes,
)
from .chinchilla import (
    DEFAULT_CHINCHILLA,
    ChinchillaParams,
    equivalent_optimal_compute,
    loss,
    optimal_compute_for_loss,
    raw_compute,
)
from .config import Config, Dataset, load_config, load_dataset
from .core import (
    ComputePath,
    HorizonObservation,
    ModelBenchmarkObservation,
    TimeSeries,
    TrendFit,
    date_from_decimal_year,
    decimal_year,
    fit_loglinear_trend,
    growth_rate,
    log_interp,
)
from .csvio import parse_csv, serialize_csv
from .errors import HorizoncastError
from .forecast import (
    CalibrationResult,
    ForecastResult,
    Milestone,
    MilestoneDelay,
    calibrate,
    fit_lambda_over_beta_concave,
    forecast_horizon,
    forecast_horizon_concave,
    milestone_date,
    milestone_delays,
    trend_horizon,
    usd_to_flop_path,
)
from .growth import (
    AlgorithmState,
    GrowthParams,
    JonesParams,
    convergence_half_life,
    decomposition_error,
    exponential_input,
    horizon_growth,
    horizon_growth_split,
    horizon_growth_with_labor,
    jones_rhs,
    path_input,
    simulate_jones,
    steady_state_growth,
)
from .scaling import (
    ConcaveFit,
    SharedSlopeFit,
    boxcox,
    demean_by_group,
    fit_concave,
    fit_shared_slope,
    local_elasticity,
)
