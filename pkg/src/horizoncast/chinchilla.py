"""Parametric loss evaluation and compute-optimal-equivalent compute.

Raw training compute is not comparable across model families that hold
their token budget fixed while scaling parameters: small members end up
heavily over-trained. Mapping every (params, tokens) allocation to the
minimum compute that reaches the same loss puts all of them on a common
"degree of compute optimality" axis before elasticity fitting.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import DomainError, InfeasibleError
from .optimize import expand_bracket, golden_section_min

FLOP_PER_PARAM_TOKEN = 6.0


@dataclass(frozen=True)
class ChinchillaParams:
    """Constants of loss = e0 + a0*N^-exp_n + b0*D^-exp_d."""

    e0: float
    a0: float
    b0: float
    exp_n: float
    exp_d: float

    def __post_init__(self):
        for name in ("e0", "a0", "b0"):
            v = getattr(self, name)
            if not math.isfinite(v) or v <= 0:
                raise DomainError(f"{name} must be positive and finite, got {v}")
        for name in ("exp_n", "exp_d"):
            v = getattr(self, name)
            if not math.isfinite(v) or not 0.0 < v < 1.0:
                raise DomainError(f"{name} must lie strictly inside (0, 1), got {v}")


# Hoffmann-style fitted constants; overridable via the config file.
DEFAULT_CHINCHILLA = ChinchillaParams(e0=1.69, a0=406.4, b0=410.7, exp_n=0.34, exp_d=0.28)


class OptimalAllocation(NamedTuple):
    flop: float
    n_params: float
    n_tokens: float


def loss(p: ChinchillaParams, n_params: float, n_tokens: float) -> float:
    """Training loss at a (params, tokens) allocation."""
    if n_params <= 0 or n_tokens <= 0:
        raise DomainError("n_params and n_tokens must be positive")
    return p.e0 + p.a0 * n_params ** -p.exp_n + p.b0 * n_tokens ** -p.exp_d


def raw_compute(n_params: float, n_tokens: float) -> float:
    """Standard 6*N*D training-FLOP approximation."""
    if n_params <= 0 or n_tokens <= 0:
        raise DomainError("n_params and n_tokens must be positive")
    return FLOP_PER_PARAM_TOKEN * n_params * n_tokens


def optimal_compute_for_loss(p: ChinchillaParams, target_loss: float) -> OptimalAllocation:
    """Minimum-compute allocation reaching ``target_loss``.

    Minimizes 6*N*D subject to loss(N, D) = target_loss via golden-section
    search over ln N, recovering D from the loss constraint. The returned
    allocation satisfies the first-order condition
    exp_n*a0*N^-exp_n == exp_d*b0*D^-exp_d to ~1e-6 relative.
    """
    reducible = target_loss - p.e0
    if not reducible > 0:
        raise InfeasibleError(
            f"target loss {target_loss} is at or below the irreducible loss {p.e0}"
        )
    # N below n_min cannot reach the target even with unlimited tokens.
    ln_n_min = math.log(p.a0 / reducible) / p.exp_n

    def tokens_for(ln_n: float) -> float:
        remaining = reducible - p.a0 * math.exp(-p.exp_n * ln_n)
        if remaining <= 0:
            return math.inf
        return (p.b0 / remaining) ** (1.0 / p.exp_d)

    def ln_budget(ln_n: float) -> float:
        d = tokens_for(ln_n)
        if not math.isfinite(d):
            return math.inf
        return math.log(FLOP_PER_PARAM_TOKEN) + ln_n + math.log(d)

    lo, hi = expand_bracket(
        ln_budget, ln_n_min + 1e-9, ln_n_min + 4.0,
        lo_limit=ln_n_min + 1e-12, hi_limit=ln_n_min + 600.0,
    )
    ln_n_opt, _ = golden_section_min(ln_budget, lo, hi, tol=1e-8)
    n_opt = math.exp(ln_n_opt)
    d_opt = tokens_for(ln_n_opt)
    return OptimalAllocation(FLOP_PER_PARAM_TOKEN * n_opt * d_opt, n_opt, d_opt)


def equivalent_optimal_compute(
    p: ChinchillaParams, n_params: float, n_tokens: float
) -> float:
    """Compute needed to reach this allocation's loss if trained optimally."""
    return optimal_compute_for_loss(p, loss(p, n_params, n_tokens)).flop
