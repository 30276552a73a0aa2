import math

import numpy as np
import pytest

import horizoncast as hc
from horizoncast.errors import (
    CalibrationError,
    DomainError,
    InsufficientDataError,
    ValidationError,
)

from conftest import constant_slope_path, make_horizon_history

LN10 = math.log(10.0)
G7 = math.log(2.0) / (7.0 / 12.0)  # 7-month doubling, ~1.188/yr


class TestUsdToFlopPath:
    def make_fpd(self, growth=0.0, start=1e17):
        ts = np.arange(2018.0, 2026.0)
        return hc.TimeSeries(ts, start * np.exp(growth * (ts - 2018.0)))

    def test_flat_fpd_passes_spend_slope_through(self):
        ts = np.arange(2020.0, 2026.0)
        spend = hc.TimeSeries(ts, 1e8 * 2.0 ** (ts - 2020.0))
        path = hc.usd_to_flop_path(spend, self.make_fpd(0.0))
        slope = hc.growth_rate(path, 2022.5) / LN10
        assert slope == pytest.approx(math.log10(2.0), abs=1e-12)

    def test_flat_spend_inherits_fpd_trend(self):
        ts = np.arange(2020.0, 2026.0)
        spend = hc.TimeSeries(ts, np.full(len(ts), 5e8))
        path = hc.usd_to_flop_path(spend, self.make_fpd(math.log(1.35)))
        slope = hc.growth_rate(path, 2022.5) / LN10
        assert slope == pytest.approx(math.log10(1.35), abs=1e-12)

    def test_scaling_spend_shifts_level_only(self):
        ts = np.arange(2020.0, 2026.0)
        values = 1e8 * np.exp(0.9 * (ts - 2020.0))
        fpd = self.make_fpd(0.27)
        base = hc.usd_to_flop_path(hc.TimeSeries(ts, values), fpd)
        scaled = hc.usd_to_flop_path(hc.TimeSeries(ts, 10.0 * values), fpd)
        np.testing.assert_allclose(
            scaled.log10_flop, base.log10_flop + 1.0, atol=1e-12
        )

    def test_uses_fitted_trend_not_raw_history(self):
        ts = np.arange(2018.0, 2026.0)
        wobble = np.array([1.0, 0.5, 2.0, 1.0, 0.5, 2.0, 1.0, 1.0])
        fpd = hc.TimeSeries(ts, 1e17 * np.exp(0.27 * (ts - 2018.0)) * wobble)
        spend = hc.TimeSeries(np.array([2020.0, 2024.0]), np.array([1e8, 1e8]))
        path = hc.usd_to_flop_path(spend, fpd)
        trend = hc.fit_loglinear_trend(fpd)
        expected = math.log10(1e8) + trend.value_at(2020.0) / LN10
        assert path.log10_flop[0] == pytest.approx(expected, abs=1e-12)

    def test_rejects_nonpositive_spend(self):
        with pytest.raises((DomainError, ValidationError)):
            hc.usd_to_flop_path(
                hc.TimeSeries([2020.0, 2021.0], [1e8, -1.0]), self.make_fpd()
            )


class TestCalibrate:
    def test_seven_month_doubling_against_45x_compute(self):
        history = make_horizon_history(g_y=G7)
        path = constant_slope_path(2018.0, 2026.0, 24.0, math.log(4.5))
        cal = hc.calibrate(history, path, "p50", (2019.0, 2025.0))
        assert cal.past_g_y == pytest.approx(G7, rel=1e-9)
        assert cal.past_g_k == pytest.approx(math.log(4.5), rel=1e-9)
        assert cal.c == pytest.approx(0.790, abs=5e-4)

    def test_equal_growth_gives_unit_ratio(self):
        history = make_horizon_history(g_y=1.2)
        path = constant_slope_path(2018.0, 2026.0, 24.0, 1.2)
        cal = hc.calibrate(history, path, "p50", (2019.0, 2025.0))
        assert cal.c == pytest.approx(1.0, rel=1e-9)

    def test_constant_horizons_give_zero(self):
        history = make_horizon_history(g_y=0.0)
        path = constant_slope_path(2018.0, 2026.0, 24.0, 1.5)
        cal = hc.calibrate(history, path, "p50", (2019.0, 2025.0))
        assert cal.c == pytest.approx(0.0, abs=1e-12)

    def test_flat_compute_is_calibration_error(self):
        history = make_horizon_history(g_y=1.2)
        path = constant_slope_path(2018.0, 2026.0, 24.0, 0.0)
        with pytest.raises(CalibrationError):
            hc.calibrate(history, path, "p50", (2019.0, 2025.0))

    def test_needs_two_observations(self):
        history = make_horizon_history(n=5)
        path = constant_slope_path(2018.0, 2026.0, 24.0, 1.0)
        with pytest.raises(InsufficientDataError):
            hc.calibrate(history, path, "p50", (2030.0, 2031.0))

    def test_anchor_is_trend_value_at_last_observation(self):
        history = make_horizon_history(g_y=G7, y_anchor=100.0, t_anchor=2025.0,
                                       end=2025.0)
        path = constant_slope_path(2018.0, 2026.0, 24.0, 1.5)
        cal = hc.calibrate(history, path, "p50", (2019.0, 2025.0))
        assert cal.anchor_t == 2025.0
        assert cal.anchor_minutes == pytest.approx(100.0, rel=1e-9)

    def test_p80_calibrated_separately(self):
        history = make_horizon_history(g_y=G7, p80_ratio=0.2)
        path = constant_slope_path(2018.0, 2026.0, 24.0, 1.5)
        p50 = hc.calibrate(history, path, "p50", (2019.0, 2025.0))
        p80 = hc.calibrate(history, path, "p80", (2019.0, 2025.0))
        assert p80.anchor_minutes == pytest.approx(0.2 * p50.anchor_minutes,
                                                   rel=1e-9)
        assert p80.past_g_y == pytest.approx(p50.past_g_y, rel=1e-9)


def exact_calibration(
    c=0.79, g_y=G7, t0=2025.0, y0=15.0, reliability="p50"
):
    return hc.CalibrationResult(
        c=c, past_g_y=g_y, past_g_k=g_y / c, anchor_t=t0, anchor_minutes=y0,
        reliability=reliability,
    )


class TestForecastHorizon:
    def test_identity_when_future_matches_past_growth(self):
        cal = exact_calibration()
        path = constant_slope_path(2025.0, 2040.0, 26.0, cal.past_g_k)
        forecast = hc.forecast_horizon(cal, path, 2035.0)
        trend = hc.trend_horizon(cal, 2035.0)
        np.testing.assert_allclose(forecast.values, trend.values, rtol=1e-12)

    def test_half_slope_halves_growth(self):
        cal = exact_calibration()
        path = constant_slope_path(2025.0, 2040.0, 26.0, cal.past_g_k / 2.0)
        forecast = hc.forecast_horizon(cal, path, 2035.0)
        ln_y = np.log(forecast.values)
        slope = (ln_y[-1] - ln_y[0]) / (forecast.times[-1] - forecast.times[0])
        assert slope == pytest.approx(cal.past_g_y / 2.0, rel=1e-12)

    def test_closed_form_value(self):
        # c=0.79, Y0=15 at 2025.0, compute slope 1.504/yr: after 5.5 years
        # horizon growth is 0.79 * 1.504 = 1.188, so Y ~ 15 e^{1.188 * 5.5}
        cal = exact_calibration(c=0.79, g_y=0.79 * 1.504)
        path = constant_slope_path(2025.0, 2040.0, 26.0, 1.504)
        forecast = hc.forecast_horizon(cal, path, 2031.0)
        idx = int(np.argmin(np.abs(forecast.times - 2030.5)))
        assert forecast.times[idx] == pytest.approx(2030.5, abs=1e-9)
        expected = 15.0 * math.exp(0.79 * 1.504 * 5.5)
        assert forecast.values[idx] == pytest.approx(expected, rel=1e-9)
        assert expected == pytest.approx(10331.27, rel=1e-4)  # ~10,300 min

    def test_monthly_sampling(self):
        cal = exact_calibration()
        path = constant_slope_path(2025.0, 2030.0, 26.0, 1.0)
        forecast = hc.forecast_horizon(cal, path, 2027.0)
        diffs = np.diff(forecast.times)
        assert diffs[:-1] == pytest.approx(np.full(len(diffs) - 1, 1.0 / 12.0))

    def test_path_not_covering_span_extends_by_slope(self):
        cal = exact_calibration()
        short_path = constant_slope_path(2025.0, 2026.0, 26.0, cal.past_g_k)
        long_path = constant_slope_path(2025.0, 2040.0, 26.0, cal.past_g_k)
        a = hc.forecast_horizon(cal, short_path, 2035.0)
        b = hc.forecast_horizon(cal, long_path, 2035.0)
        np.testing.assert_allclose(a.values, b.values, rtol=1e-12)

    def test_level_shift_invariance(self):
        cal = exact_calibration()
        base = constant_slope_path(2025.0, 2040.0, 26.0, 0.9)
        shifted = hc.ComputePath(base.years, base.log10_flop + 2.0)
        f_base = hc.forecast_horizon(cal, base, 2035.0)
        f_shift = hc.forecast_horizon(cal, shifted, 2035.0)
        np.testing.assert_allclose(f_base.values, f_shift.values, rtol=1e-12)

    def test_lower_growth_gives_lower_path_and_later_milestones(self):
        cal = exact_calibration()
        fast = hc.forecast_horizon(
            cal, constant_slope_path(2025.0, 2040.0, 26.0, 1.5), 2040.0
        )
        slow = hc.forecast_horizon(
            cal, constant_slope_path(2025.0, 2040.0, 26.0, 0.75), 2040.0
        )
        assert np.all(slow.values[1:] < fast.values[1:])
        for threshold in (60.0, 480.0, 2400.0):
            d_fast = hc.milestone_date(fast, threshold)
            d_slow = hc.milestone_date(slow, threshold)
            assert d_slow is None or d_fast is None or d_slow >= d_fast

    def test_seam_continuity_for_composite_path(self):
        cal = exact_calibration()
        composite = hc.ComputePath.from_knots(
            [(2023.0, 25.0), (2025.0, 26.0), (2027.0, 26.6), (2030.0, 27.0)]
        )
        forecast = hc.forecast_horizon(cal, composite, 2032.0)
        ratios = forecast.values[1:] / forecast.values[:-1]
        # no jump bigger than the largest per-month growth on the path
        assert ratios.max() < math.exp(1.3 * cal.c / 12.0) + 1e-9
        assert ratios.min() > 1.0 - 1e-9


class TestForecastConcave:
    FIT = hc.ConcaveFit(beta_coef=0.45, rho=0.0, intercepts={}, partial_r2=1.0,
                        n_obs=0, n_groups=0, transform="chinchilla_adjusted")
    GROWTH = hc.GrowthParams.with_training_share(0.45, 0.95, s_c=0.1)

    def test_rho_zero_reduces_to_linear(self):
        c = self.FIT.beta_coef * (1.0 + self.GROWTH.lambda_over_beta)
        cal = exact_calibration(c=c, g_y=c * 1.2)
        path = hc.ComputePath.from_knots(
            [(2025.0, 26.0), (2027.3, 27.1), (2031.0, 28.0), (2036.0, 28.6)]
        )
        linear = hc.forecast_horizon(cal, path, 2035.0)
        concave = hc.forecast_horizon_concave(cal, path, self.FIT, self.GROWTH,
                                              2035.0)
        np.testing.assert_allclose(concave.values, linear.values, rtol=1e-8)

    def test_flat_path_flat_horizon(self):
        fit = hc.ConcaveFit(beta_coef=4e4, rho=-0.2, intercepts={},
                            partial_r2=1.0, n_obs=0, n_groups=0,
                            transform="chinchilla_adjusted")
        cal = exact_calibration()
        path = constant_slope_path(2025.0, 2040.0, 26.0, 0.0)
        concave = hc.forecast_horizon_concave(cal, path, fit, self.GROWTH, 2035.0)
        np.testing.assert_allclose(concave.values, cal.anchor_minutes, rtol=1e-12)

    def test_negative_rho_slowdown_delays_milestones_more(self):
        # a declining local elasticity bends the path down, so milestones under
        # a slowdown land weakly later than in the constant-elasticity forecast
        beta_at_ref = 0.45 * (10.0 ** 25.6) ** 0.2
        fit = hc.ConcaveFit(beta_coef=beta_at_ref, rho=-0.2, intercepts={},
                            partial_r2=1.0, n_obs=0, n_groups=0,
                            transform="chinchilla_adjusted")
        c = 0.45 * 1.95
        cal = exact_calibration(c=c, g_y=c * 1.2, y0=100.0)
        slowdown = hc.ComputePath.from_knots(
            [(2025.0, 26.5), (2028.0, 28.0), (2031.0, 28.6), (2040.0, 29.8)]
        )
        linear = hc.forecast_horizon(cal, slowdown, 2045.0)
        concave = hc.forecast_horizon_concave(cal, slowdown, fit, self.GROWTH,
                                              2045.0)
        for threshold in (480.0, 2400.0, 10020.0):
            d_lin = hc.milestone_date(linear, threshold)
            d_con = hc.milestone_date(concave, threshold)
            assert d_lin is not None
            assert d_con is None or d_con >= d_lin - 1e-9

    def test_level_shift_sensitivity_with_nonzero_rho(self):
        fit = hc.ConcaveFit(beta_coef=1e5, rho=-0.2, intercepts={},
                            partial_r2=1.0, n_obs=0, n_groups=0,
                            transform="chinchilla_adjusted")
        cal = exact_calibration()
        base = constant_slope_path(2025.0, 2040.0, 26.0, 1.2)
        shifted = hc.ComputePath(base.years, base.log10_flop + 1.0)
        f_base = hc.forecast_horizon_concave(cal, base, fit, self.GROWTH, 2032.0)
        f_shift = hc.forecast_horizon_concave(cal, shifted, fit, self.GROWTH,
                                              2032.0)
        assert not np.allclose(f_base.values[1:], f_shift.values[1:], rtol=1e-6)


class TestFitLambdaOverBeta:
    def synthetic_history(self, lob, beta_coef, rho, s_c=0.1, n=30,
                          noise_sd=0.0, seed=0):
        rng = np.random.default_rng(seed)
        path = hc.ComputePath.from_knots([(2018.0, 24.0), (2026.0, 28.0)])
        fit = hc.ConcaveFit(beta_coef=beta_coef, rho=rho, intercepts={},
                            partial_r2=1.0, n_obs=0, n_groups=0,
                            transform="chinchilla_adjusted")
        cal = hc.CalibrationResult(c=1.0, past_g_y=1.0, past_g_k=1.0,
                                   anchor_t=2019.0, anchor_minutes=1.0,
                                   reliability="p50")
        growth = hc.GrowthParams.with_training_share(0.45, lob, s_c=s_c)
        dense = hc.forecast_horizon_concave(cal, path, fit, growth, 2025.0)
        times = np.linspace(2019.0, 2025.0, n)
        ln_y = np.interp(times, dense.times, np.log(dense.values))
        obs = [
            hc.HorizonObservation(
                model_id=f"m{i}", developer="lab", release=float(t),
                p50_minutes=math.exp(ln_y[i] + rng.normal(0.0, noise_sd)),
            )
            for i, t in enumerate(times)
        ]
        return obs, path, fit

    def test_recovers_generator_value(self):
        obs, path, fit = self.synthetic_history(
            lob=0.95, beta_coef=0.45 * (10.0 ** 25.0) ** 0.15, rho=-0.15,
            noise_sd=0.02, seed=5,
        )
        got = hc.fit_lambda_over_beta_concave(obs, path, fit, s_c=0.1)
        assert got == pytest.approx(0.95, abs=0.02)

    def test_rho_zero_exact_recovery(self):
        obs, path, fit = self.synthetic_history(lob=0.7, beta_coef=0.5, rho=0.0)
        got = hc.fit_lambda_over_beta_concave(obs, path, fit, s_c=0.1)
        assert got == pytest.approx(0.7, abs=1e-9)

    def test_single_observation_errors(self):
        obs, path, fit = self.synthetic_history(lob=0.9, beta_coef=0.5, rho=0.0)
        with pytest.raises(InsufficientDataError):
            hc.fit_lambda_over_beta_concave(obs[:1], path, fit, s_c=0.1)


class TestMilestoneDate:
    def path_from_growth(self, y0, g, t0=2025.0, years=15.0):
        ts = t0 + np.arange(int(years * 12) + 1) / 12.0
        return hc.TimeSeries(ts, y0 * np.exp(g * (ts - t0)))

    def test_closed_form_crossing(self):
        path = self.path_from_growth(15.0, 1.188)
        expected = 2025.0 + math.log(10020.0 / 15.0) / 1.188
        got = hc.milestone_date(path, 10020.0)
        assert got == pytest.approx(expected, abs=1e-9)
        assert got == pytest.approx(2030.5, abs=0.05)

    def test_threshold_below_start(self):
        path = self.path_from_growth(15.0, 1.0)
        assert hc.milestone_date(path, 10.0) == path.times[0]

    def test_flat_path_never_crosses(self):
        path = self.path_from_growth(15.0, 0.0)
        assert hc.milestone_date(path, 100.0) is None

    def test_interpolates_in_log_space(self):
        # exact exponential: interpolation in ln Y makes the crossing exact
        path = self.path_from_growth(10.0, 0.9)
        got = hc.milestone_date(path, 1234.5)
        assert got == pytest.approx(2025.0 + math.log(123.45) / 0.9, abs=1e-9)


class TestMilestoneDelays:
    def test_identical_paths_zero_delay(self):
        cal = exact_calibration(y0=100.0)
        trend = hc.trend_horizon(cal, 2040.0)
        milestones = [hc.Milestone("1 day", 480.0), hc.Milestone("1 week", 2400.0)]
        rows = hc.milestone_delays(trend, trend, milestones)
        assert all(r.delay_years == pytest.approx(0.0, abs=1e-12) for r in rows)

    def test_slowdown_delays_increase_with_threshold(self):
        cal = exact_calibration(y0=100.0, c=1.0, g_y=1.2)
        trend = hc.trend_horizon(cal, 2045.0)
        slowdown_path = hc.ComputePath.from_knots(
            [(2025.0, 26.0), (2028.0, 26.9), (2040.0, 28.1)]
        )
        forecast = hc.forecast_horizon(cal, slowdown_path, 2045.0)
        milestones = [
            hc.Milestone("a", 480.0), hc.Milestone("b", 2400.0),
            hc.Milestone("c", 10020.0),
        ]
        rows = hc.milestone_delays(trend, forecast, milestones)
        delays = [r.delay_years for r in rows]
        assert all(d is not None for d in delays)
        assert delays == sorted(delays)

    def test_unreached_is_flagged(self):
        cal = exact_calibration(y0=10.0, g_y=1.0)
        trend = hc.trend_horizon(cal, 2035.0)
        flat = hc.forecast_horizon(
            cal, constant_slope_path(2025.0, 2040.0, 26.0, 0.0), 2035.0
        )
        (row,) = hc.milestone_delays(trend, flat, [hc.Milestone("m", 5000.0)])
        assert row.flag == ">span"
        assert row.date_forecast is None
        assert row.delay_years is None
        assert row.date_trend is not None

    def test_mismatched_starts_rejected(self):
        cal_a = exact_calibration(t0=2025.0)
        cal_b = exact_calibration(t0=2026.0)
        with pytest.raises(ValidationError):
            hc.milestone_delays(
                hc.trend_horizon(cal_a, 2030.0), hc.trend_horizon(cal_b, 2030.0),
                [hc.Milestone("m", 100.0)],
            )

    def test_p80_delays_weakly_exceed_p50(self):
        # same c, lower anchor: every milestone sits farther out, so a
        # slowdown has longer to bite before the crossing
        slowdown_path = hc.ComputePath.from_knots(
            [(2025.0, 26.0), (2028.0, 26.9), (2045.0, 28.6)]
        )
        delays = {}
        for reliability, y0 in (("p50", 100.0), ("p80", 20.0)):
            cal = exact_calibration(y0=y0, c=1.0, g_y=1.2,
                                    reliability=reliability)
            trend = hc.trend_horizon(cal, 2050.0)
            forecast = hc.forecast_horizon(cal, slowdown_path, 2050.0)
            rows = hc.milestone_delays(
                trend, forecast,
                [hc.Milestone("day", 480.0), hc.Milestone("week", 2400.0)],
            )
            delays[reliability] = [r.delay_years for r in rows]
        for d50, d80 in zip(delays["p50"], delays["p80"]):
            assert d80 >= d50 - 1e-9
