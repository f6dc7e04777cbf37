"""Double-exponential quadrature on the half line [0, inf).

The exp-sinh map x = exp((pi/2) sinh t) sends t in R onto (0, inf) with
double-exponential clustering at both ends, so integrable log singularities
at 0 and algebraically decaying tails (~ 1/x^2) are both handled without
special casing.  The integrand is never evaluated at x = 0.

The trapezoidal sum in t is refined by halving the step; only new nodes
are evaluated at each level.  The error estimate is the difference between
successive levels, which over-estimates the true error once the rule is in
its convergent regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

HALF_PI = 0.5 * math.pi
# keeps exp(+-(pi/2) sinh t) inside the normal double range
T_MAX = 6.7


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    err_estimate: float
    evaluations: int
    converged: bool


def _eval(f, x):
    # the outermost nodes sit near 1e+-277; integrands overflowing there to inf
    # in an intermediate (x*x, 1/x) are normal and resolve to 0 or are caught below
    with np.errstate(over="ignore"):
        return np.asarray(f(x), dtype=float)


def _nodes(ts: np.ndarray):
    u = HALF_PI * np.sinh(ts)
    x = np.exp(u)
    w = HALF_PI * np.cosh(ts) * x
    return x, w


def exp_sinh(
    f: Callable[[np.ndarray], np.ndarray],
    tol: float = 1e-8,
    *,
    h0: float = 0.5,
    min_level: int = 3,
    max_level: int = 11,
) -> QuadratureResult:
    """Integrate a vectorised ``f`` over (0, inf) to absolute tolerance ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    k = int(math.floor(T_MAX / h0))
    ts = h0 * np.arange(-k, k + 1)
    x, w = _nodes(ts)
    fx = _eval(f, x)
    if not np.all(np.isfinite(fx)):
        return QuadratureResult(math.nan, math.inf, len(ts), False)
    total = math.fsum(fx * w)
    evals = len(ts)
    h = h0
    estimate = h * total
    err = math.inf
    for level in range(1, max_level + 1):
        h *= 0.5
        # odd multiples of the new step
        m = int(math.floor((T_MAX / h - 1) / 2))
        ts = h * (2 * np.arange(-m - 1, m + 1) + 1)
        x, w = _nodes(ts)
        fx = _eval(f, x)
        evals += len(ts)
        if not np.all(np.isfinite(fx)):
            return QuadratureResult(estimate, math.inf, evals, False)
        total += math.fsum(fx * w)
        new = h * total
        err = abs(new - estimate)
        estimate = new
        if level >= min_level and err <= tol:
            return QuadratureResult(estimate, err, evals, True)
    return QuadratureResult(estimate, err, evals, False)


def integrate_even_line(f, tol: float = 1e-8, **kw) -> QuadratureResult:
    """Integral of an even ``f`` over the whole real line, via 2 * int_0^inf."""
    r = exp_sinh(f, tol / 2, **kw)
    return QuadratureResult(2 * r.value, 2 * r.err_estimate, r.evaluations, r.converged)
