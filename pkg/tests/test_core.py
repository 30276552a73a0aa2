import datetime as dt
import math

import numpy as np
import pytest

import horizoncast as hc
from horizoncast.errors import (
    DomainError,
    InsufficientDataError,
    ValidationError,
)

LN10 = math.log(10.0)


class TestInstants:
    def test_decimal_year_start_of_april(self):
        # 2025-04-01 is day 90 of a 365-day year
        assert hc.decimal_year(dt.date(2025, 4, 1)) == pytest.approx(
            2025 + 90 / 365, abs=1e-12
        )

    def test_leap_year_aware(self):
        assert hc.decimal_year(dt.date(2024, 12, 31)) == pytest.approx(
            2024 + 365 / 366, abs=1e-12
        )

    @pytest.mark.parametrize("day", [
        dt.date(2019, 1, 1), dt.date(2020, 2, 29), dt.date(2024, 7, 23),
        dt.date(2025, 12, 31),
    ])
    def test_round_trip(self, day):
        assert hc.date_from_decimal_year(hc.decimal_year(day)) == day


class TestTimeSeries:
    def test_requires_strictly_increasing(self):
        with pytest.raises(ValidationError):
            hc.TimeSeries([2020.0, 2020.0], [1.0, 2.0])

    def test_duplicate_times_not_averaged(self):
        with pytest.raises(ValidationError, match="strictly increasing"):
            hc.TimeSeries([2020.0, 2021.0, 2021.0], [1.0, 2.0, 3.0])

    def test_rejects_non_finite(self):
        with pytest.raises(ValidationError):
            hc.TimeSeries([2020.0], [math.nan])

    def test_immutable(self):
        series = hc.TimeSeries([2020.0, 2021.0], [1.0, 2.0])
        with pytest.raises(ValueError):
            series.values[0] = 5.0


class TestComputePath:
    def test_needs_two_knots(self):
        with pytest.raises(ValidationError):
            hc.ComputePath([2020.0], [24.0])

    def test_from_knots(self):
        path = hc.ComputePath.from_knots([(2020, 24.0), (2022, 26.0)])
        assert len(path) == 2


@pytest.fixture
def two_knot_path():
    return hc.ComputePath.from_knots([(2020.0, 24.0), (2022.0, 26.0)])


@pytest.fixture
def two_segment_path():
    # slopes 1.0 then 0.5 in log10 per year
    return hc.ComputePath.from_knots([(2020.0, 24.0), (2022.0, 26.0), (2024.0, 27.0)])


class TestLogInterp:
    def test_midpoint(self, two_knot_path):
        assert hc.log_interp(two_knot_path, 2021.0) == pytest.approx(25.0, abs=1e-12)

    def test_slope_continuation_beyond_last_knot(self, two_knot_path):
        assert hc.log_interp(two_knot_path, 2023.0) == pytest.approx(27.0, abs=1e-12)

    def test_slope_continuation_before_first_knot(self, two_knot_path):
        assert hc.log_interp(two_knot_path, 2019.0) == pytest.approx(23.0, abs=1e-12)

    def test_exact_at_knots(self, two_segment_path):
        for t, v in zip(two_segment_path.years, two_segment_path.log10_flop):
            assert hc.log_interp(two_segment_path, float(t)) == v

    def test_continuous_everywhere(self, two_segment_path):
        ts = np.linspace(2018.0, 2026.0, 1601)
        vals = hc.log_interp(two_segment_path, ts)
        jumps = np.abs(np.diff(vals))
        assert jumps.max() < 0.01  # bounded by max |slope| * dt

    def test_vectorized_matches_scalar(self, two_segment_path):
        ts = np.array([2019.5, 2021.0, 2023.0, 2025.5])
        vec = hc.log_interp(two_segment_path, ts)
        assert vec == pytest.approx([hc.log_interp(two_segment_path, t) for t in ts])


class TestGrowthRate:
    def test_segment_slope_times_ln10(self, two_knot_path):
        assert hc.growth_rate(two_knot_path, 2021.0) == pytest.approx(
            1.0 * LN10, abs=1e-12
        )

    def test_flat_path(self):
        path = hc.ComputePath.from_knots([(2020.0, 24.0), (2022.0, 24.0)])
        assert hc.growth_rate(path, 2021.0) == 0.0

    def test_right_slope_convention_at_knot(self, two_segment_path):
        assert hc.growth_rate(two_segment_path, 2022.0) == pytest.approx(0.5 * LN10)

    def test_matches_log_interp_derivative_off_knots(self, two_segment_path):
        for t in (2020.7, 2021.3, 2022.9, 2023.5):
            h = 1e-6
            numeric = (
                hc.log_interp(two_segment_path, t + h)
                - hc.log_interp(two_segment_path, t - h)
            ) / (2 * h) * LN10
            assert hc.growth_rate(two_segment_path, t) == pytest.approx(
                numeric, rel=1e-6
            )


def _ols_oracle(t, y):
    """Independent least-squares solve used to cross-check the trend fit.

    Centered design keeps the solve well-conditioned with calendar-year
    regressors; the intercept is mapped back to the t=0 convention.
    """
    t = np.asarray(t, dtype=float)
    centered = np.column_stack([np.ones_like(t), t - t.mean()])
    coef, *_ = np.linalg.lstsq(centered, np.asarray(y, dtype=float), rcond=None)
    return coef[1], coef[0] - coef[1] * t.mean()


class TestLoglinearTrend:
    def test_exact_exponential(self):
        ts = np.arange(2019.0, 2026.0)
        series = hc.TimeSeries(ts, 10.0 * 2.0 ** (ts - 2019.0))
        fit = hc.fit_loglinear_trend(series, log_transform=True)
        assert fit.slope == pytest.approx(math.log(2.0), abs=1e-12)
        assert fit.r2 == pytest.approx(1.0, abs=1e-12)

    def test_constant_series(self):
        series = hc.TimeSeries([2019.0, 2020.0, 2021.0], [5.0, 5.0, 5.0])
        fit = hc.fit_loglinear_trend(series, log_transform=True)
        assert fit.slope == 0.0
        assert fit.r2 == 1.0

    def test_matches_normal_equations_oracle(self):
        rng = np.random.default_rng(42)
        ts = np.sort(2019.0 + 6.0 * rng.random(40))
        ts = np.unique(ts)
        values = np.exp(0.8 * (ts - 2019.0) + rng.normal(0, 0.3, len(ts))) * 3.0
        fit = hc.fit_loglinear_trend(hc.TimeSeries(ts, values), log_transform=True)
        slope, intercept = _ols_oracle(ts, np.log(values))
        assert fit.slope == pytest.approx(slope, abs=1e-12)
        assert fit.intercept == pytest.approx(intercept, rel=1e-9)

    def test_shift_invariance_of_slope(self):
        rng = np.random.default_rng(7)
        ts = np.sort(2019.0 + 6.0 * np.unique(rng.random(30)))
        values = np.exp(1.1 * (ts - 2019.0)) * np.exp(rng.normal(0, 0.2, len(ts)))
        base = hc.fit_loglinear_trend(hc.TimeSeries(ts, values))
        shifted = hc.fit_loglinear_trend(hc.TimeSeries(ts + 37.25, values))
        assert shifted.slope == pytest.approx(base.slope, rel=1e-9)

    def test_insufficient_data(self):
        with pytest.raises(InsufficientDataError):
            hc.fit_loglinear_trend(hc.TimeSeries([2020.0], [1.0]))

    def test_rejects_nonpositive_for_log(self):
        series = hc.TimeSeries([2019.0, 2020.0], [1.0, -1.0])
        with pytest.raises((DomainError, ValidationError)):
            hc.fit_loglinear_trend(series, log_transform=True)


class TestHorizonObservation:
    def test_needs_some_horizon(self):
        with pytest.raises(ValidationError):
            hc.HorizonObservation("m", "lab", 2024.0)

    def test_p80_cannot_exceed_p50(self):
        with pytest.raises(ValidationError):
            hc.HorizonObservation("m", "lab", 2024.0, p50_minutes=10.0,
                                  p80_minutes=20.0)

    def test_horizon_accessor(self):
        obs = hc.HorizonObservation("m", "lab", 2024.0, p50_minutes=10.0)
        assert obs.horizon("p50") == 10.0
        assert obs.horizon("p80") is None


class TestModelBenchmarkObservation:
    def test_flop_consistency_warning(self):
        with pytest.warns(UserWarning, match="training_flop"):
            hc.ModelBenchmarkObservation(
                "fam", "m", "bench", 1e9, 1e12, 1e24, 5.0
            )

    def test_consistent_flop_no_warning(self, recwarn):
        hc.ModelBenchmarkObservation("fam", "m", "bench", 1e9, 1e12, 6e21, 5.0)
        assert not [w for w in recwarn.list if issubclass(w.category, UserWarning)]
