"""One-dimensional minimization helpers.

All nonlinear fits in this package reduce to smooth unimodal 1-D
objectives, so a bracketed golden-section search is the single solver
used everywhere (derivative-free and robust to flat regions).
"""

from __future__ import annotations

import math
from typing import Callable

from .errors import SolverError

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
_INV_PHI2 = (3.0 - math.sqrt(5.0)) / 2.0


def golden_section_min(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-8,
) -> tuple[float, float]:
    """Minimize a unimodal ``f`` on [lo, hi] to within ``tol`` in x.

    Returns ``(x_min, f(x_min))``. The interval endpoints are assumed to
    bracket the minimum; use :func:`expand_bracket` first when they may not.
    """
    if not hi > lo:
        raise SolverError(f"invalid bracket [{lo}, {hi}]")
    a, b = lo, hi
    h = b - a
    if h <= tol:
        x = 0.5 * (a + b)
        return x, f(x)
    n_steps = int(math.ceil(math.log(tol / h) / math.log(_INV_PHI)))
    c = a + _INV_PHI2 * h
    d = a + _INV_PHI * h
    fc = f(c)
    fd = f(d)
    for _ in range(n_steps):
        if fc < fd:
            b, d, fd = d, c, fc
            h *= _INV_PHI
            c = a + _INV_PHI2 * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h *= _INV_PHI
            d = a + _INV_PHI * h
            fd = f(d)
    if fc < fd:
        return c, fc
    return d, fd


def expand_bracket(
    f: Callable[[float], float],
    lo: float,
    hi: float,
    lo_limit: float,
    hi_limit: float,
    max_steps: int = 60,
) -> tuple[float, float]:
    """Grow [lo, hi] until the minimum of ``f`` lies strictly inside it.

    Expansion doubles the interval toward whichever end currently holds
    the smallest sampled value, clamped to [lo_limit, hi_limit]. Raises
    :class:`SolverError` when the minimum keeps sliding into a hard limit.
    """
    span = hi - lo
    f_lo, f_hi = f(lo), f(hi)
    f_mid = f(0.5 * (lo + hi))
    for _ in range(max_steps):
        if f_mid <= f_lo and f_mid <= f_hi:
            return lo, hi
        if f_lo < f_hi:
            if lo <= lo_limit:
                raise SolverError(
                    f"objective still decreasing at lower limit {lo_limit}"
                )
            lo = max(lo_limit, lo - span)
        else:
            if hi >= hi_limit:
                raise SolverError(
                    f"objective still decreasing at upper limit {hi_limit}"
                )
            hi = min(hi_limit, hi + span)
        span = hi - lo
        f_lo, f_hi = f(lo), f(hi)
        f_mid = f(0.5 * (lo + hi))
    raise SolverError("bracket expansion did not enclose a minimum")
