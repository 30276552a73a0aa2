import math

import numpy as np
import pytest

import horizoncast as hc
from horizoncast.config import load_config, load_dataset
from horizoncast.report import ForecastEngine


@pytest.fixture(scope="session")
def config():
    return load_config()


@pytest.fixture(scope="session")
def dataset(config):
    return load_dataset(config)


@pytest.fixture(scope="session")
def engine(config, dataset):
    return ForecastEngine(config, dataset)


def make_panel(
    gamma=0.5,
    intercepts=(1.0, 2.0),
    noise_sd=0.0,
    seed=0,
    n_per_group=6,
    rho=None,
    tokens=2e13,
):
    """Synthetic family benchmark panel with a known generating model.

    With ``rho`` None the log-horizon is linear in log compute; otherwise
    it follows gamma * boxcox(compute / geometric-mean, rho).
    """
    rng = np.random.default_rng(seed)
    sizes = np.logspace(9, 12, n_per_group)
    obs = []
    ln_flop_all = [
        math.log(6.0 * n * tokens) for n in sizes for _ in intercepts
    ]
    ln_gm = float(np.mean(ln_flop_all))
    for gi, level in enumerate(intercepts):
        family = f"family-{gi}"
        benchmark = f"bench-{gi}"
        for si, n_params in enumerate(sizes):
            flop = 6.0 * n_params * tokens
            if rho is None:
                ln_y = level + gamma * math.log(flop)
            else:
                ln_y = level + gamma * hc.boxcox(flop / math.exp(ln_gm), rho)
            ln_y += rng.normal(0.0, noise_sd)
            obs.append(hc.ModelBenchmarkObservation(
                family=family,
                model_id=f"{family}-m{si}",
                benchmark=benchmark,
                params_count=n_params,
                tokens_count=tokens,
                training_flop=flop,
                horizon_minutes=math.exp(ln_y),
            ))
    return obs


def make_horizon_history(
    g_y=math.log(2.0) / (7.0 / 12.0),
    y_anchor=100.0,
    t_anchor=2025.0,
    g_c=math.log(4.5),
    flop_anchor=1e25,
    start=2019.0,
    end=2025.0,
    n=25,
    p80_ratio=0.2,
    noise_sd=0.0,
    seed=0,
):
    """Exact (or noisy) exponential horizon history for calibration tests."""
    rng = np.random.default_rng(seed)
    times = np.linspace(start, end, n)
    obs = []
    for i, t in enumerate(times):
        eps_y = rng.normal(0.0, noise_sd) if noise_sd else 0.0
        eps_c = rng.normal(0.0, noise_sd) if noise_sd else 0.0
        p50 = y_anchor * math.exp(g_y * (t - t_anchor) + eps_y)
        obs.append(hc.HorizonObservation(
            model_id=f"model-{i}",
            developer="lab",
            release=float(t),
            p50_minutes=p50,
            p80_minutes=p50 * p80_ratio,
            training_flop=flop_anchor * math.exp(g_c * (t - t_anchor) + eps_c),
        ))
    return obs


def constant_slope_path(t0, t1, log10_start, ln_slope):
    """Two-knot path whose natural-log growth rate is exactly ``ln_slope``."""
    slope10 = ln_slope / math.log(10.0)
    return hc.ComputePath(
        np.array([t0, t1]),
        np.array([log10_start, log10_start + slope10 * (t1 - t0)]),
    )
