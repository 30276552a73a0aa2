"""Compute-to-horizon elasticity estimation.

Two fitters over model-family benchmark panels:

* :func:`fit_shared_slope` -- one slope on log compute with a fixed
  effect per (family, benchmark) group, estimated by residualizing both
  sides on group means (Frisch-Waugh), with a cluster-robust standard
  error and the partial R^2 against the intercepts-only baseline.
* :func:`fit_concave` -- the Box-Cox generalization, where the slope
  term becomes beta * (C^rho - 1)/rho and the local elasticity
  beta * C^rho may decline with compute. Profiled: for fixed rho the
  problem is the linear fit on transformed compute, so the solver is a
  golden-section search over rho around inner shared-slope fits.

Compute is rescaled to zero-mean log internally before the Box-Cox fit
(raw FLOP magnitudes near 1e24 would make x^rho explode); the reported
coefficients are mapped back to original units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Hashable, Sequence

import numpy as np

from .chinchilla import ChinchillaParams, DEFAULT_CHINCHILLA, equivalent_optimal_compute
from .core import ModelBenchmarkObservation
from .errors import (
    DomainError,
    InsufficientDataError,
    SolverError,
    UnidentifiedSlopeError,
    ValidationError,
)
from .optimize import golden_section_min

TRANSFORMS = ("raw", "chinchilla_adjusted")


@dataclass(frozen=True)
class SharedSlopeFit:
    gamma: float
    intercepts: dict[tuple[str, str], float]
    partial_r2: float
    se_gamma_clustered: float
    n_obs: int
    n_groups: int
    transform: str

    def to_report(self) -> dict:
        return {
            "model": "shared_slope",
            "gamma": self.gamma,
            "intercepts": {f"{f}|{b}": v for (f, b), v in sorted(self.intercepts.items())},
            "partial_r2": self.partial_r2,
            "se": self.se_gamma_clustered,
            "n_obs": self.n_obs,
            "n_groups": self.n_groups,
            "transform": self.transform,
        }


@dataclass(frozen=True)
class ConcaveFit:
    beta_coef: float
    rho: float
    intercepts: dict[tuple[str, str], float]
    partial_r2: float
    n_obs: int
    n_groups: int
    transform: str

    def to_report(self) -> dict:
        return {
            "model": "concave",
            "beta_coef": self.beta_coef,
            "rho": self.rho,
            "intercepts": {f"{f}|{b}": v for (f, b), v in sorted(self.intercepts.items())},
            "partial_r2": self.partial_r2,
            "se": None,
            "n_obs": self.n_obs,
            "n_groups": self.n_groups,
            "transform": self.transform,
        }


def boxcox(x: float | np.ndarray, rho: float) -> float | np.ndarray:
    """(x^rho - 1)/rho with the rho -> 0 limit ln x.

    Uses expm1(rho ln x)/rho, which stays continuous to machine precision
    through rho = 0 instead of cancelling catastrophically.
    """
    arr = np.asarray(x, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("boxcox requires x > 0")
    lx = np.log(arr)
    out = lx if rho == 0.0 else np.expm1(rho * lx) / rho
    if np.ndim(x) == 0:
        return float(out)
    return out


def _group_index(groups: Sequence[Hashable]) -> np.ndarray:
    index: dict = {}
    inverse = np.empty(len(groups), dtype=np.intp)
    for i, g in enumerate(groups):
        inverse[i] = index.setdefault(g, len(index))
    return inverse


def demean_by_group(
    values: Sequence[float] | np.ndarray, groups: Sequence[Hashable]
) -> np.ndarray:
    """Subtract each value's group mean; per-group output sums are 0."""
    arr = np.asarray(values, dtype=float)
    if len(arr) != len(groups):
        raise ValidationError(
            f"length mismatch: {len(arr)} values vs {len(groups)} group keys"
        )
    inverse = _group_index(groups)
    sums = np.bincount(inverse, weights=arr)
    counts = np.bincount(inverse)
    return arr - (sums / counts)[inverse]


def _compute_axis(
    obs: Sequence[ModelBenchmarkObservation],
    compute_transform: str,
    chinchilla: ChinchillaParams,
) -> np.ndarray:
    if compute_transform == "raw":
        return np.array([o.training_flop for o in obs], dtype=float)
    if compute_transform == "chinchilla_adjusted":
        return np.array(
            [equivalent_optimal_compute(chinchilla, o.params_count, o.tokens_count)
             for o in obs],
            dtype=float,
        )
    raise DomainError(f"unknown compute transform {compute_transform!r}")


def _check_panel(obs: Sequence[ModelBenchmarkObservation], min_extra: int) -> list:
    groups = [o.group for o in obs]
    n_groups = len(set(groups))
    counts: dict = {}
    for g in groups:
        counts[g] = counts.get(g, 0) + 1
    if not any(c >= 2 for c in counts.values()):
        raise InsufficientDataError("need at least one group with 2+ observations")
    if len(obs) < n_groups + min_extra:
        raise InsufficientDataError(
            f"need at least n_groups + {min_extra} observations "
            f"({n_groups} groups, {len(obs)} rows)"
        )
    return groups


def _inner_ols(y_t: np.ndarray, x_t: np.ndarray) -> tuple[float, float, float]:
    """Slope, SSR and Sxx of demeaned y on demeaned x (no intercept)."""
    sxx = float(np.dot(x_t, x_t))
    if sxx < 1e-12 * len(x_t):
        raise UnidentifiedSlopeError(
            "no within-group compute variation; slope not identified"
        )
    slope = float(np.dot(x_t, y_t) / sxx)
    resid = y_t - slope * x_t
    return slope, float(np.dot(resid, resid)), sxx


def _clustered_se(
    x_t: np.ndarray,
    resid: np.ndarray,
    clusters: Sequence[Hashable],
    sxx: float,
    n_params: int,
) -> float:
    """Liang-Zeger sandwich on the residualized regression (CR1 scaling)."""
    inverse = _group_index(clusters)
    scores = np.bincount(inverse, weights=x_t * resid)
    meat = float(np.dot(scores, scores))
    n, g = len(x_t), len(scores)
    if n <= n_params:
        return 0.0  # saturated fit: residuals are identically zero
    factor = (n - 1) / (n - n_params)
    if g > 1:
        factor *= g / (g - 1)
    return math.sqrt(factor * meat / (sxx * sxx))


def fit_shared_slope(
    obs: Sequence[ModelBenchmarkObservation],
    compute_transform: str = "raw",
    chinchilla: ChinchillaParams = DEFAULT_CHINCHILLA,
) -> SharedSlopeFit:
    """Shared-slope fixed-effects fit of ln horizon on ln compute.

    Never drops rows: excluding degenerate benchmarks is the caller's job.
    """
    groups = _check_panel(obs, min_extra=1)
    compute = _compute_axis(obs, compute_transform, chinchilla)
    x = np.log(compute)
    y = np.log([o.horizon_minutes for o in obs])
    x_t = demean_by_group(x, groups)
    y_t = demean_by_group(y, groups)
    gamma, ssr_full, sxx = _inner_ols(y_t, x_t)
    ssr_base = float(np.dot(y_t, y_t))
    partial_r2 = 1.0 if ssr_base == 0.0 else 1.0 - ssr_full / ssr_base

    intercepts: dict[tuple[str, str], list[float]] = {}
    for o, xi, yi in zip(obs, x, y):
        intercepts.setdefault(o.group, []).append(yi - gamma * xi)
    intercept_map = {g: float(np.mean(vals)) for g, vals in intercepts.items()}

    se = _clustered_se(
        x_t, y_t - gamma * x_t, [o.family for o in obs], sxx,
        n_params=len(intercept_map) + 1,
    )
    return SharedSlopeFit(
        gamma=gamma,
        intercepts=intercept_map,
        partial_r2=partial_r2,
        se_gamma_clustered=se,
        n_obs=len(obs),
        n_groups=len(intercept_map),
        transform=compute_transform,
    )


def fit_concave(
    obs: Sequence[ModelBenchmarkObservation],
    compute_transform: str = "raw",
    chinchilla: ChinchillaParams = DEFAULT_CHINCHILLA,
    fixed_rho: float | None = None,
    rho_bounds: tuple[float, float] = (-2.0, 1.0),
) -> ConcaveFit:
    """NLS fit of ln horizon on group constants + beta * boxcox(compute, rho)."""
    groups = _check_panel(obs, min_extra=2)
    compute = _compute_axis(obs, compute_transform, chinchilla)
    x_ln = np.log(compute)
    y = np.log([o.horizon_minutes for o in obs])
    y_t = demean_by_group(y, groups)
    ssr_base = float(np.dot(y_t, y_t))

    ln_scale = float(x_ln.mean())
    x_scaled = np.exp(x_ln - ln_scale)  # geometric mean 1

    def profiled(rho: float) -> tuple[float, float]:
        t_var = boxcox(x_scaled, rho)
        t_t = demean_by_group(t_var, groups)
        beta_s, ssr, _ = _inner_ols(y_t, t_t)
        return beta_s, ssr

    if fixed_rho is not None:
        rho = float(fixed_rho)
    else:
        lo, hi = rho_bounds
        rho, _ = golden_section_min(lambda r: profiled(r)[1], lo, hi, tol=1e-6)
        # Bracket check: a minimum pinned to an endpoint means the stated
        # bounds do not enclose it; widen once before giving up.
        for _ in range(3):
            margin = 1e-4 * (hi - lo)
            if lo + margin < rho < hi - margin:
                break
            lo, hi = lo - (hi - lo), hi + (hi - lo)
            rho, _ = golden_section_min(lambda r: profiled(r)[1], lo, hi, tol=1e-6)
        else:
            raise SolverError(
                f"rho search did not interiorize a minimum in [{lo}, {hi}] "
                f"(last rho={rho:.6f})"
            )

    beta_s, ssr = profiled(rho)
    partial_r2 = 1.0 if ssr_base == 0.0 else 1.0 - ssr / ssr_base

    # Map coefficients from geometric-mean-scaled compute back to FLOP units:
    # beta * boxcox(C/S, rho) == beta*S^-rho * boxcox(C, rho) + beta*boxcox(1/S, rho)
    beta = beta_s * math.exp(-rho * ln_scale)
    shift = beta_s * boxcox(math.exp(-ln_scale), rho)
    t_full = boxcox(x_scaled, rho)
    intercepts: dict[tuple[str, str], list[float]] = {}
    for o, ti, yi in zip(obs, t_full, y):
        intercepts.setdefault(o.group, []).append(yi - beta_s * ti)
    intercept_map = {g: float(np.mean(vals)) + shift for g, vals in intercepts.items()}

    return ConcaveFit(
        beta_coef=beta,
        rho=rho,
        intercepts=intercept_map,
        partial_r2=partial_r2,
        n_obs=len(obs),
        n_groups=len(intercept_map),
        transform=compute_transform,
    )


def local_elasticity(fit: ConcaveFit, compute: float | np.ndarray) -> float | np.ndarray:
    """d ln horizon / d ln compute at a compute level: beta * C^rho."""
    arr = np.asarray(compute, dtype=float)
    if np.any(arr <= 0):
        raise DomainError("compute must be positive")
    out = fit.beta_coef * arr ** fit.rho
    if np.ndim(compute) == 0:
        return float(out)
    return out
