"""Maximum-likelihood fit of the gamma shape parameter.

The score equation reduces to ln(alpha) - psi(alpha) = s where s is the
log-moment gap ln(mean) - mean(log). The left side is strictly decreasing
from +inf to 0, so the root is unique for any s > 0.
"""

import math
from dataclasses import dataclass

import numpy as np

from .estimators import theil_l_hat
from .exceptions import DegenerateSampleError, NoConvergenceError
from .special import digamma, trigamma

_RESIDUAL_TOL = 1e-10
_STEP_TOL = 1e-12
_DEGENERATE_S = 1e-12
_MAX_ITERATIONS = 100
_MAX_NEWTON = 24
_MAX_STALLS = 3


@dataclass(frozen=True)
class MleResult:
    alpha_hat: float
    rate_hat: float
    iterations: int
    residual: float


def log_moment_gap(sample):
    """s = ln(mean(x)) - mean(ln x); the sufficient statistic of the shape
    fit. Identical to the Theil L estimate by definition."""
    return theil_l_hat(sample)


def _initial_shape(s):
    # Minka/Thom starting point, within a few percent of the root
    return (3.0 - s + math.sqrt((s - 3.0) ** 2 + 24.0 * s)) / (12.0 * s)


def _score(alpha, s):
    return math.log(alpha) - digamma(alpha) - s


def _bisect(s, start, iterations):
    lo = hi = start
    while _score(lo, s) <= 0.0:
        lo /= 4.0
        if lo < 1e-300:
            raise NoConvergenceError("bracket expansion exhausted below")
    while _score(hi, s) >= 0.0:
        hi *= 4.0
        if hi > 1e300:
            raise NoConvergenceError("bracket expansion exhausted above")
    u_lo, u_hi = math.log(lo), math.log(hi)
    while iterations < _MAX_ITERATIONS:
        iterations += 1
        u_mid = 0.5 * (u_lo + u_hi)
        mid = math.exp(u_mid)
        f = _score(mid, s)
        if abs(f) <= _RESIDUAL_TOL:
            return mid, abs(f), iterations
        if f > 0.0:
            u_lo = u_mid
        else:
            u_hi = u_mid
    raise NoConvergenceError(f"no root with residual <= {_RESIDUAL_TOL} after {iterations} iterations")


def fit_shape(sample):
    """Fit the gamma shape by maximum likelihood.

    Newton iteration on ln(alpha) from the Minka starting point; falls back
    to bisection on an expanding bracket if Newton stalls or leaves the
    domain. Raises DegenerateSampleError when the sample has no dispersion
    (n < 2 or all observations equal).
    """
    if sample.n < 2:
        raise DegenerateSampleError("shape fit needs at least two observations")
    s = log_moment_gap(sample)
    if s < _DEGENERATE_S:
        raise DegenerateSampleError(
            "all observations are (numerically) equal; the fitted shape diverges"
        )

    alpha = _initial_shape(s)
    u = math.log(alpha)
    iterations = 0
    stalls = 0
    prev_abs_f = math.inf
    fell_back = False
    residual = math.inf
    for _ in range(_MAX_NEWTON):
        f = _score(alpha, s)
        residual = abs(f)
        if residual <= _RESIDUAL_TOL:
            break
        if residual >= prev_abs_f:
            stalls += 1
            if stalls >= _MAX_STALLS:
                fell_back = True
                break
        else:
            stalls = 0
        prev_abs_f = residual
        deriv = 1.0 / alpha - trigamma(alpha)
        step = -f / (alpha * deriv)
        if not math.isfinite(step):
            fell_back = True
            break
        iterations += 1
        u += step
        if not -700.0 < u < 700.0:
            fell_back = True
            break
        alpha = math.exp(u)
        if abs(step) <= _STEP_TOL:
            residual = abs(_score(alpha, s))
            break
    else:
        fell_back = residual > _RESIDUAL_TOL

    if fell_back or residual > _RESIDUAL_TOL:
        alpha, residual, iterations = _bisect(s, _initial_shape(s), iterations)

    mean = float(np.sum(np.sort(sample.observations))) / sample.n
    return MleResult(
        alpha_hat=alpha,
        rate_hat=alpha / mean,
        iterations=iterations,
        residual=residual,
    )
