"""Monte Carlo study of the six estimators (three uncorrected, three
bias-corrected) over a grid of shapes and sample sizes.

Reproducibility model: every replication owns a private counter-based
stream derived by hashing (master_seed, alpha_index, n_index, replication),
so results are a pure function of the config no matter how the work is
scheduled. Aggregation always reduces in replication order with exact
compensated summation.
"""

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .estimators import atkinson_hat, theil_l_hat, theil_t_hat
from .exceptions import DegenerateSampleError, DomainError, NoConvergenceError
from .mle import fit_shape
from .model import (
    GammaParams,
    atkinson_population,
    bias_atkinson,
    bias_theil_l,
    bias_theil_t,
    sample_gamma,
    theil_l_population,
    theil_t_population,
)
from .special import _check_count

ESTIMATOR_IDS = (
    "theil_t",
    "theil_t_corr",
    "theil_l",
    "theil_l_corr",
    "atkinson",
    "atkinson_corr",
)

# Sentinel accepted by SimConfig.rate: use rate = alpha in every cell.
RATE_ALPHA = "alpha"

DEFAULT_ALPHAS = (0.1, 0.5, 1.5, 2.0)
DEFAULT_NS = (10, 20, 50, 100, 200)
DEFAULT_N_SIM = 1000
DEFAULT_MASTER_SEED = 42

# Cells whose smallest true index falls below this are refused: relative
# bias against a vanishing denominator is meaningless.
_MIN_TRUE_VALUE = 1e-6

_MASK64 = (1 << 64) - 1


def _check_seed(master_seed):
    if isinstance(master_seed, bool) or not isinstance(master_seed, int):
        raise DomainError(f"master_seed must be an integer, got {master_seed!r}")
    if not 0 <= master_seed <= _MASK64:
        raise DomainError(f"master_seed must fit in 64 unsigned bits, got {master_seed}")
    return master_seed


def _check_index(value, name):
    if isinstance(value, bool) or not isinstance(value, int):
        raise DomainError(f"{name} must be an integer, got {value!r}")
    if value < 0:
        raise DomainError(f"{name} must be nonnegative, got {value}")
    return value


@dataclass(frozen=True)
class SimConfig:
    """Grid specification for the study. rate may be a positive number or
    the string "alpha" to sample each cell at rate equal to its shape
    (both give identical index statistics by scale invariance)."""

    alphas: tuple = DEFAULT_ALPHAS
    ns: tuple = DEFAULT_NS
    n_sim: int = DEFAULT_N_SIM
    rate: float | str = 1.0
    master_seed: int = DEFAULT_MASTER_SEED

    def __post_init__(self):
        alphas = tuple(float(a) for a in self.alphas)
        if not alphas:
            raise DomainError("alphas must be nonempty")
        if len(set(alphas)) != len(alphas):
            raise DomainError("alphas must be unique")
        for a in alphas:
            params = GammaParams(a)
            smallest = min(
                theil_t_population(params),
                theil_l_population(params),
                atkinson_population(params),
            )
            if smallest < _MIN_TRUE_VALUE:
                raise DomainError(
                    f"alpha={a:g} makes the smallest true index {smallest:.3g} < {_MIN_TRUE_VALUE:g}; "
                    "relative bias would be meaningless"
                )
        ns = tuple(self.ns)
        if not ns:
            raise DomainError("ns must be nonempty")
        for n in ns:
            _check_count(n, "n")
        if len(set(ns)) != len(ns):
            raise DomainError("ns must be unique")
        _check_count(self.n_sim, "n_sim")
        if self.rate != RATE_ALPHA:
            GammaParams(1.0, self.rate)
        _check_seed(self.master_seed)
        object.__setattr__(self, "alphas", alphas)
        object.__setattr__(self, "ns", ns)

    def rate_for(self, alpha):
        return float(alpha) if self.rate == RATE_ALPHA else float(self.rate)


@dataclass(frozen=True)
class SimSummary:
    """Aggregates for one estimator in one grid cell."""

    alpha: float
    n: int
    estimator: str
    true_value: float
    mean_estimate: float
    rel_bias: float
    mse: float
    n_effective: int
    n_failed: int


def _mix64(z):
    # splitmix64 finalizer: full-avalanche 64-bit mixing
    z = (z + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_stream(master_seed, alpha_index, n_index, replication):
    """Deterministic, statistically independent stream for one replication.

    The coordinates are absorbed one at a time through the splitmix64
    avalanche and the result keys a 128-bit Philox counter-based generator,
    so distinct (seed, alpha_index, n_index, replication) tuples give
    distinct streams with no shared state.
    """
    _check_seed(master_seed)
    h = master_seed
    for word in (
        _check_index(alpha_index, "alpha_index"),
        _check_index(n_index, "n_index"),
        _check_index(replication, "replication"),
    ):
        h = _mix64(h ^ (word & _MASK64))
    key = h | (_mix64(h) << 64)
    return np.random.Generator(np.random.Philox(key=key))


def _aggregate(alpha, n, estimator, true_value, values, n_sim):
    n_effective = len(values)
    if n_effective:
        mean = math.fsum(values) / n_effective
        rel_bias = (mean - true_value) / true_value
        mse = math.fsum((v - true_value) ** 2 for v in values) / n_effective
    else:
        mean = rel_bias = mse = math.nan
    return SimSummary(
        alpha=alpha,
        n=n,
        estimator=estimator,
        true_value=true_value,
        mean_estimate=mean,
        rel_bias=rel_bias,
        mse=mse,
        n_effective=n_effective,
        n_failed=n_sim - n_effective,
    )


def run_cell(alpha, n, n_sim, rate, master_seed, alpha_index=0, n_index=0):
    """Run all replications for one (alpha, n) cell and aggregate the six
    estimators. Deterministic given master_seed and the cell indices.

    Replications whose shape fit fails still contribute to the uncorrected
    aggregates; the corrected ones record them in n_failed.
    """
    params = GammaParams(float(alpha), float(rate))
    _check_count(n, "n")
    _check_count(n_sim, "n_sim")
    _check_seed(master_seed)
    _check_index(alpha_index, "alpha_index")
    _check_index(n_index, "n_index")

    plain = {key: [] for key in ("theil_t", "theil_l", "atkinson")}
    corrected = {key: [] for key in ("theil_t_corr", "theil_l_corr", "atkinson_corr")}
    for replication in range(n_sim):
        stream = derive_stream(master_seed, alpha_index, n_index, replication)
        sample = sample_gamma(params, n, stream)
        tt = theil_t_hat(sample)
        tl = theil_l_hat(sample)
        at = atkinson_hat(sample)
        plain["theil_t"].append(tt)
        plain["theil_l"].append(tl)
        plain["atkinson"].append(at)
        if n < 2:
            continue
        try:
            fit = fit_shape(sample)
        except (DegenerateSampleError, NoConvergenceError):
            continue
        fitted = GammaParams(fit.alpha_hat)
        corrected["theil_t_corr"].append(tt - bias_theil_t(fitted, n))
        corrected["theil_l_corr"].append(tl - bias_theil_l(fitted, n))
        corrected["atkinson_corr"].append(at - bias_atkinson(fitted, n))

    trues = {
        "theil_t": theil_t_population(params),
        "theil_l": theil_l_population(params),
        "atkinson": atkinson_population(params),
    }
    summaries = []
    for key in ESTIMATOR_IDS:
        base = key.removesuffix("_corr")
        values = corrected[key] if key.endswith("_corr") else plain[key]
        summaries.append(
            _aggregate(float(alpha), n, key, trues[base], values, n_sim)
        )
    return summaries


def _run_cell_task(task):
    alpha_index, n_index, alpha, n, n_sim, rate, master_seed = task
    rows = run_cell(
        alpha, n, n_sim, rate, master_seed, alpha_index=alpha_index, n_index=n_index
    )
    return alpha_index, n_index, rows


def run_grid(config, workers=1):
    """Run the full grid and return summaries ordered by (alpha ascending,
    n ascending, fixed estimator order). Output is identical for any
    worker count."""
    if not isinstance(config, SimConfig):
        raise DomainError(f"expected a SimConfig, got {type(config).__name__}")
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise DomainError(f"workers must be a positive integer, got {workers!r}")

    alphas = sorted(config.alphas)
    ns = sorted(config.ns)
    tasks = [
        (ai, ni, alpha, n, config.n_sim, config.rate_for(alpha), config.master_seed)
        for ai, alpha in enumerate(alphas)
        for ni, n in enumerate(ns)
    ]
    results = {}
    if workers == 1 or len(tasks) == 1:
        for task in tasks:
            ai, ni, rows = _run_cell_task(task)
            results[(ai, ni)] = rows
    else:
        with ProcessPoolExecutor(max_workers=min(workers, len(tasks))) as pool:
            for ai, ni, rows in pool.map(_run_cell_task, tasks):
                results[(ai, ni)] = rows

    ordered = []
    for ai in range(len(alphas)):
        for ni in range(len(ns)):
            ordered.extend(results[(ai, ni)])
    return ordered
