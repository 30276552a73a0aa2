"""Ideas-production dynamics and the horizon-growth algebra.

The causal chain: experimental compute drives algorithmic progress
through a Jones law of motion dA/dt = k * A^(1-beta) * E^lambda, whose
growth rate converges to (lambda/beta) * gE under exponential inputs;
horizon growth is the compute elasticity times the sum of training-
compute growth and algorithmic growth. The simulator substantiates the
convergence speed instead of assuming it; the forecasting layer uses
only the steady-state map.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

import numpy as np

from .core import ComputePath, TimeSeries, log_interp
from .errors import DivergenceError, DomainError, IntegrationError, ValidationError

LN10 = math.log(10.0)


@dataclass(frozen=True)
class JonesParams:
    """dA/dt = scale * A^(1-beta) * E^lam with beta, lam > 0."""

    scale: float = 1.0
    beta: float = 0.5
    lam: float = 0.475

    def __post_init__(self):
        for name in ("scale", "beta", "lam"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0:
                raise ValidationError(f"{name} must be positive and finite, got {v}")

    @property
    def lambda_over_beta(self) -> float:
        return self.lam / self.beta


@dataclass(frozen=True)
class GrowthParams:
    """Reduced-form parameters of the horizon-growth equations."""

    gamma: float
    lambda_over_beta: float
    alpha: float = 0.0  # labor share inside the ideas input
    s_c: float = 0.5    # training share of total R&D compute
    s_e: float = 0.5    # experimental share

    def __post_init__(self):
        if not math.isfinite(self.gamma):
            raise ValidationError("gamma must be finite")
        if not self.lambda_over_beta > 0:
            raise ValidationError("lambda_over_beta must be positive")
        if not 0.0 <= self.alpha < 1.0:
            raise ValidationError(f"alpha must lie in [0, 1), got {self.alpha}")
        for name in ("s_c", "s_e"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise ValidationError(f"{name} must lie strictly inside (0, 1)")
        if abs(self.s_c + self.s_e - 1.0) > 1e-12:
            raise ValidationError("compute shares s_c + s_e must sum to 1")

    @classmethod
    def with_training_share(
        cls, gamma: float, lambda_over_beta: float, s_c: float, alpha: float = 0.0
    ) -> "GrowthParams":
        return cls(gamma=gamma, lambda_over_beta=lambda_over_beta, alpha=alpha,
                   s_c=s_c, s_e=1.0 - s_c)


@dataclass(frozen=True)
class AlgorithmState:
    """Algorithmic multiplier A (dimensionless, > 0) at an instant."""

    a: float
    t: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and self.a > 0):
            raise ValidationError(f"algorithm level must be positive, got {self.a}")


EInput = Callable[[float], float]


def exponential_input(e0: float, g_e: float, t0: float) -> EInput:
    """E(t) = e0 * exp(g_e * (t - t0))."""
    if e0 <= 0:
        raise DomainError("e0 must be positive")
    return lambda t: e0 * math.exp(g_e * (t - t0))


def path_input(path: ComputePath, s_e: float) -> EInput:
    """Experimental compute as a fixed share of a total-R&D-compute path."""
    if not 0.0 < s_e <= 1.0:
        raise DomainError("s_e must lie in (0, 1]")
    return lambda t: s_e * 10.0 ** log_interp(path, t)


def jones_rhs(state: AlgorithmState, e: float, p: JonesParams) -> float:
    """Instantaneous dA/dt."""
    if e <= 0:
        raise DomainError("experimental compute must be positive")
    return p.scale * state.a ** (1.0 - p.beta) * e ** p.lam


def jones_log_growth(a: float, e: float, p: JonesParams) -> float:
    """Instantaneous d ln A / dt = scale * A^-beta * E^lam."""
    return p.scale * a ** -p.beta * e ** p.lam


def simulate_jones(
    a0: float,
    e_input: Union[EInput, ComputePath],
    p: JonesParams,
    t_span: tuple[float, float],
    dt: float,
    s_e: float = 1.0,
) -> TimeSeries:
    """Integrate the law of motion with classical RK4 at fixed step ``dt``.

    ``e_input`` is a callable E(t) or a ComputePath (combined with the
    experimental share ``s_e``). Output is A sampled at every step;
    halving ``dt`` moves the endpoint by under 1e-6 relative for smooth
    inputs, and any non-finite or non-positive state aborts with the
    offending time.
    """
    if dt <= 0:
        raise DomainError("dt must be positive")
    if a0 <= 0:
        raise DomainError("initial algorithm level must be positive")
    t0, t1 = t_span
    if not t1 > t0:
        raise DomainError("t_span must satisfy t1 > t0")
    e_fn = path_input(e_input, s_e) if isinstance(e_input, ComputePath) else e_input

    def rhs(a: float, t: float) -> float:
        return p.scale * a ** (1.0 - p.beta) * e_fn(t) ** p.lam

    n_steps = int(math.ceil((t1 - t0) / dt - 1e-12))
    times = np.empty(n_steps + 1)
    values = np.empty(n_steps + 1)
    times[0], values[0] = t0, a0
    a, t = a0, t0
    for i in range(n_steps):
        h = min(dt, t1 - t)
        k1 = rhs(a, t)
        k2 = rhs(a + 0.5 * h * k1, t + 0.5 * h)
        k3 = rhs(a + 0.5 * h * k2, t + 0.5 * h)
        k4 = rhs(a + h * k3, t + h)
        a = a + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t = t0 + (i + 1) * dt if i + 1 < n_steps else t1
        if not math.isfinite(a) or a <= 0:
            raise IntegrationError("algorithm level left (0, inf)", t=t)
        times[i + 1], values[i + 1] = t, a
    return TimeSeries(times, values)


def steady_state_growth(p: Union[GrowthParams, JonesParams], g_e: float) -> float:
    """Long-run d ln A / dt under exponential input growth: (lam/beta) * gE."""
    return p.lambda_over_beta * g_e


def convergence_half_life(
    p: JonesParams,
    g_e: float,
    initial_growth_gap: float,
    e0: float = 1.0,
    dt: float = 1.0 / 480.0,
    max_years: float = 100.0,
) -> float:
    """Years until the gap between g_A and its steady state halves.

    Starts the simulation from an A whose instantaneous growth deviates
    from (lam/beta)*gE by ``initial_growth_gap`` and watches g_A(t) along
    the trajectory.
    """
    if g_e <= 0:
        raise DomainError("g_e must be positive")
    if initial_growth_gap == 0.0:
        return 0.0
    g_star = steady_state_growth(p, g_e)
    g_start = g_star + initial_growth_gap
    if g_start <= 0:
        raise DomainError("initial growth gap pushes g_A below zero")
    a0 = (p.scale * e0 ** p.lam / g_start) ** (1.0 / p.beta)
    e_fn = exponential_input(e0, g_e, 0.0)

    target = abs(initial_growth_gap) / 2.0
    prev_t, prev_gap = 0.0, abs(initial_growth_gap)
    chunk = 5.0
    t_start = 0.0
    while t_start < max_years:
        t_end = min(t_start + chunk, max_years)
        series = simulate_jones(a0, e_fn, p, (t_start, t_end), dt)
        for t, a in zip(series.times[1:], series.values[1:]):
            gap = abs(jones_log_growth(a, e_fn(t), p) - g_star)
            if gap <= target:
                # linear interpolation between the bracketing samples
                if prev_gap == gap:
                    return float(t)
                frac = (prev_gap - target) / (prev_gap - gap)
                return float(prev_t + frac * (t - prev_t))
            prev_t, prev_gap = float(t), gap
        a0 = float(series.values[-1])
        t_start = t_end
    raise DivergenceError(
        f"growth gap did not halve within {max_years} years"
    )


def horizon_growth(p: GrowthParams, g_total: float) -> float:
    """Horizon growth from total-R&D-compute growth: gamma*(1+lam/beta)*g."""
    return p.gamma * (1.0 + p.lambda_over_beta) * g_total


def horizon_growth_split(p: GrowthParams, g_c: float, g_e: float) -> float:
    """Horizon growth with training and experimental growth kept separate."""
    return p.gamma * (g_c + p.lambda_over_beta * g_e)


def horizon_growth_with_labor(p: GrowthParams, g_ec: float, g_l: float) -> float:
    """Labor-extended horizon growth with research-labor share alpha."""
    lb = p.lambda_over_beta
    return p.gamma * ((1.0 + lb * (1.0 - p.alpha)) * g_ec + lb * p.alpha * g_l)


def decomposition_error(p: GrowthParams, g_c: float, g_e: float) -> float:
    """Share-decomposition correction (s_E - (lam/beta) s_C)(gC - gE)."""
    return (p.s_e - p.lambda_over_beta * p.s_c) * (g_c - g_e)
