"""Gamma population model: population index values, finite-sample estimator
expectations and biases in closed form, and a reproducible gamma sampler.

Every closed form depends on the shape parameter only; the rate never enters,
which is the scale invariance all tests lean on.
"""

import enum
import math
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .special import digamma, log_gamma_ratio_scaled, _check_count, _check_positive

# A generator produced by numpy; every sampler call consumes from one of these.
RngStream = np.random.Generator

# ln x - psi(x) switches to its Bernoulli series here (cancellation guard).
_SERIES_CUTOFF = 12.0


@dataclass(frozen=True)
class GammaParams:
    """Shape/rate parameterization of the gamma distribution (mean = shape/rate)."""

    shape: float
    rate: float = 1.0

    def __post_init__(self):
        object.__setattr__(self, "shape", _check_positive(self.shape, "shape"))
        object.__setattr__(self, "rate", _check_positive(self.rate, "rate"))


class IndexKind(enum.Enum):
    THEIL_T = "theil_t"
    THEIL_L = "theil_l"
    ATKINSON = "atkinson"


@dataclass(frozen=True)
class PopulationValues:
    """The three population inequality indices at a fixed shape."""

    theil_t: float
    theil_l: float
    atkinson: float

    def value(self, kind):
        if not isinstance(kind, IndexKind):
            raise DomainError(f"kind must be an IndexKind, got {kind!r}")
        return getattr(self, kind.value)


@dataclass(frozen=True)
class Sample:
    """One-dimensional collection of strictly positive finite observations.

    The array is copied and frozen at construction; invalid entries are
    rejected with the index of the first offender.
    """

    observations: np.ndarray

    def __post_init__(self):
        try:
            obs = np.array(self.observations, dtype=float, copy=True)
        except (TypeError, ValueError) as exc:
            raise DomainError(f"observations must be real numbers: {exc}") from None
        if obs.ndim != 1:
            raise DomainError(f"observations must be one-dimensional, got shape {obs.shape}")
        if obs.size < 1:
            raise DomainError("sample must contain at least one observation")
        bad = ~(np.isfinite(obs) & (obs > 0.0))
        if bad.any():
            i = int(np.argmax(bad))
            raise DomainError(
                f"observation {i} must be strictly positive and finite, got {float(obs[i])!r}"
            )
        obs.flags.writeable = False
        object.__setattr__(self, "observations", obs)

    @property
    def n(self):
        return int(self.observations.size)

    def __eq__(self, other):
        if not isinstance(other, Sample):
            return NotImplemented
        return np.array_equal(self.observations, other.observations)

    def __hash__(self):
        return hash((self.observations.size, self.observations.tobytes()))


def _ln_minus_psi(x):
    # ln x - psi(x), always in (0, 1/x); the direct subtraction cancels
    # catastrophically once x is large, so switch to the series tail
    if x < _SERIES_CUTOFF:
        return math.log(x) - digamma(x)
    inv = 1.0 / x
    t = inv * inv
    return 0.5 * inv + t * (
        1.0 / 12.0
        - t * (1.0 / 120.0 - t * (1.0 / 252.0 - t * (1.0 / 240.0 - t * (1.0 / 132.0))))
    )


def theil_t_population(params):
    """Population Theil T index: psi(shape) + 1/shape - ln(shape)."""
    a = params.shape
    return math.fsum((digamma(a), 1.0 / a, -math.log(a)))


def theil_l_population(params):
    """Population Theil L (mean log deviation) index: ln(shape) - psi(shape)."""
    return _ln_minus_psi(params.shape)


def atkinson_population(params):
    """Population Atkinson index (unit inequality aversion):
    1 - exp(psi(shape))/shape, evaluated as -expm1(-theil_l) so the value
    stays inside (0, 1) with full relative accuracy for any shape."""
    return -math.expm1(-_ln_minus_psi(params.shape))


def population_values(params):
    """All three population indices bundled."""
    return PopulationValues(
        theil_t=theil_t_population(params),
        theil_l=theil_l_population(params),
        atkinson=atkinson_population(params),
    )


def _scaled_shape(params, n):
    _check_count(n, "n")
    return n * params.shape


def expected_theil_t(params, n):
    """Exact mean of the Theil T estimator over samples of size n:
    psi(a) + 1/a + ln n - 1/(na) - psi(na)."""
    a = params.shape
    x = _scaled_shape(params, n)
    return math.fsum((digamma(a), 1.0 / a, math.log(n), -1.0 / x, -digamma(x)))


def expected_theil_l(params, n):
    """Exact mean of the Theil L estimator over samples of size n:
    psi(na) - ln n - psi(a)."""
    a = params.shape
    x = _scaled_shape(params, n)
    return math.fsum((digamma(x), -math.log(n), -digamma(a)))


def expected_atkinson(params, n):
    """Exact mean of the Atkinson estimator over samples of size n:
    1 - Gamma(a + 1/n)^n / (a * Gamma(a)^n), evaluated in log space."""
    a = params.shape
    _check_count(n, "n")
    gap = log_gamma_ratio_scaled(a, n) - math.log(a)
    return max(0.0, -math.expm1(gap))


def bias_theil_t(params, n):
    """Closed-form bias of the Theil T estimator: ln(na) - 1/(na) - psi(na).
    Strictly negative; vanishes as na grows."""
    x = _scaled_shape(params, n)
    return _ln_minus_psi(x) - 1.0 / x


def bias_theil_l(params, n):
    """Closed-form bias of the Theil L estimator: psi(na) - ln(na).
    Strictly negative; equals -bias_theil_t - 1/(na)."""
    return -_ln_minus_psi(_scaled_shape(params, n))


def bias_atkinson(params, n):
    """Closed-form bias of the Atkinson estimator:
    (exp(psi(a)) - Gamma(a + 1/n)^n / Gamma(a)^n) / a.

    Evaluated as exp(lgr - ln a) * expm1(psi(a) - lgr) where lgr is the
    log-space gamma ratio. Both factors are bounded (the first lies in
    (0, 1], the second in (-1, 0]), so no intermediate can overflow even
    at tiny shapes where psi(a) - lgr is hugely negative. The exponent of
    the second factor is clamped at zero: convexity of ln Gamma makes
    lgr >= psi(a), and the clamp keeps the nonpositive sign from flipping
    within rounding noise.
    """
    a = params.shape
    _check_count(n, "n")
    lgr = log_gamma_ratio_scaled(a, n)
    drop = digamma(a) - lgr
    if drop > 0.0:
        drop = 0.0
    return math.exp(lgr - math.log(a)) * math.expm1(drop)


def _gamma_variates_ge1(stream, shape, count):
    # Marsaglia-Tsang squeeze method, valid for shape >= 1; rejection
    # rounds are vectorized and consume the stream deterministically
    d = shape - 1.0 / 3.0
    c = 1.0 / math.sqrt(9.0 * d)
    out = np.empty(count)
    pending = np.arange(count)
    while pending.size:
        x = stream.standard_normal(pending.size)
        u = stream.random(pending.size)
        v = (1.0 + c * x) ** 3
        ok = v > 0.0
        log_v = np.log(np.where(ok, v, 1.0))
        log_u = np.log(np.maximum(u, 5e-324))
        accept = ok & (
            (u < 1.0 - 0.0331 * x**4) | (log_u < 0.5 * x * x + d * (1.0 - v + log_v))
        )
        out[pending[accept]] = d * v[accept]
        pending = pending[~accept]
    return out


def _gamma_variates(stream, shape, count):
    if shape >= 1.0:
        return _gamma_variates_ge1(stream, shape, count)
    # boost trick for shape < 1: Gamma(shape) = Gamma(shape + 1) * U^(1/shape);
    # 1 - random() keeps U in (0, 1] so the power cannot hit log(0)
    y = _gamma_variates_ge1(stream, shape + 1.0, count)
    u = 1.0 - stream.random(count)
    return y * u ** (1.0 / shape)


def sample_gamma(params, count, stream):
    """Draw `count` i.i.d. Gamma(shape, rate) observations from `stream`.

    Deterministic given the stream state. Draws that underflow to zero
    (possible only for extreme parameters) are redrawn, so the returned
    Sample is always valid.
    """
    _check_count(count, "count")
    if not isinstance(stream, np.random.Generator):
        raise DomainError(f"stream must be a numpy Generator, got {type(stream).__name__}")
    draws = _gamma_variates(stream, params.shape, count)
    if params.rate != 1.0:
        draws = draws / params.rate
    bad = ~(np.isfinite(draws) & (draws > 0.0))
    while bad.any():
        redrawn = _gamma_variates(stream, params.shape, int(bad.sum()))
        if params.rate != 1.0:
            redrawn = redrawn / params.rate
        draws[bad] = redrawn
        bad = ~(np.isfinite(draws) & (draws > 0.0))
    return Sample(draws)
