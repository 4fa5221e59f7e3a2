"""Closed-form population values, expectations, biases (against frozen
40-digit oracles and cross-identities), and the gamma sampler."""

import math

import numpy as np
import pytest
from scipy import stats

from conftest import IDENTITY_ALPHAS, IDENTITY_NS
from gammaineq import (
    DomainError,
    GammaParams,
    IndexKind,
    Sample,
    atkinson_population,
    bias_atkinson,
    bias_theil_l,
    bias_theil_t,
    derive_stream,
    digamma,
    expected_atkinson,
    expected_theil_l,
    expected_theil_t,
    population_values,
    sample_gamma,
    theil_l_population,
    theil_t_population,
)

# frozen 40-digit oracle values
THEIL_T_AT_1 = 0.42278433509846714  # 1 - gamma
THEIL_T_AT_2 = 0.22963715453852183
THEIL_L_AT_1 = 0.5772156649015329  # gamma
THEIL_L_AT_2 = 0.27036284546147817
ATKINSON_AT_1 = 0.4385405164331148  # 1 - exp(-gamma)
ATKINSON_AT_2 = 0.23689744420206806
E_TT_1_2 = 0.19314718055994531  # ln 2 - 1/2
E_TL_1_2 = 0.30685281944005469  # 1 - ln 2
E_AT_1_2 = 0.21460183660255169  # 1 - pi/4
B_TT_1_2 = -0.22963715453852183
B_TT_1_1 = -0.42278433509846714
B_TL_1_2 = -0.27036284546147817
B_TL_1_1 = -0.5772156649015329
B_AT_1_2 = -0.22393867983056314  # exp(-gamma) - pi/4
B_AT_1_1 = -0.4385405164331148


def test_params_validation():
    for bad in (0.0, -1.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            GammaParams(bad)
        with pytest.raises(DomainError):
            GammaParams(1.0, bad)


def test_population_examples():
    assert theil_t_population(GammaParams(1.0)) == pytest.approx(THEIL_T_AT_1, abs=1e-12)
    assert theil_t_population(GammaParams(2.0)) == pytest.approx(THEIL_T_AT_2, abs=1e-12)
    assert theil_l_population(GammaParams(1.0)) == pytest.approx(THEIL_L_AT_1, abs=1e-12)
    assert theil_l_population(GammaParams(2.0)) == pytest.approx(THEIL_L_AT_2, abs=1e-12)
    assert atkinson_population(GammaParams(1.0)) == pytest.approx(ATKINSON_AT_1, abs=1e-12)
    assert atkinson_population(GammaParams(2.0)) == pytest.approx(ATKINSON_AT_2, abs=1e-12)


def test_population_equality_limit():
    params = GammaParams(1e8)
    assert 0.0 < theil_t_population(params) <= 1e-7
    assert 0.0 < theil_l_population(params) <= 1e-7
    assert 0.0 < atkinson_population(params) <= 1e-7


def test_population_identities_on_grid():
    for alpha in IDENTITY_ALPHAS:
        params = GammaParams(alpha)
        tt = theil_t_population(params)
        tl = theil_l_population(params)
        at = atkinson_population(params)
        assert abs(tl - (1.0 / alpha - tt)) <= 1e-12
        assert abs(at - (1.0 - math.exp(-tl))) <= 1e-12
        # independent route: 1 - exp(psi(alpha))/alpha
        assert abs(at - (1.0 - math.exp(digamma(alpha)) / alpha)) <= 1e-12


def test_population_positive_and_decreasing():
    values = [population_values(GammaParams(a)) for a in sorted(IDENTITY_ALPHAS)]
    for triple in values:
        assert triple.theil_t > 0.0
        assert triple.theil_l > 0.0
        assert 0.0 < triple.atkinson < 1.0
    for kind in IndexKind:
        series = [v.value(kind) for v in values]
        assert all(b < a for a, b in zip(series, series[1:]))


def test_population_values_accessor():
    triple = population_values(GammaParams(1.5))
    assert triple.value(IndexKind.THEIL_T) == triple.theil_t
    assert triple.value(IndexKind.THEIL_L) == triple.theil_l
    assert triple.value(IndexKind.ATKINSON) == triple.atkinson
    with pytest.raises(DomainError):
        triple.value("theil_t")


def test_scale_invariance_is_exact():
    for alpha in (0.1, 1.5, 100.0):
        reference = None
        for rate in (0.5, 1.0, 7.0):
            params = GammaParams(alpha, rate)
            got = (
                theil_t_population(params),
                theil_l_population(params),
                atkinson_population(params),
                expected_theil_t(params, 10),
                expected_theil_l(params, 10),
                expected_atkinson(params, 10),
                bias_theil_t(params, 10),
                bias_theil_l(params, 10),
                bias_atkinson(params, 10),
            )
            if reference is None:
                reference = got
            assert got == reference


def test_expectation_examples():
    one = GammaParams(1.0)
    assert expected_theil_t(one, 2) == pytest.approx(E_TT_1_2, abs=1e-12)
    assert expected_theil_t(one, 1) == pytest.approx(0.0, abs=1e-12)
    assert expected_theil_l(one, 2) == pytest.approx(E_TL_1_2, abs=1e-12)
    assert expected_theil_l(one, 1) == pytest.approx(0.0, abs=1e-12)
    assert expected_atkinson(one, 2) == pytest.approx(E_AT_1_2, abs=1e-12)
    assert expected_atkinson(one, 1) == pytest.approx(0.0, abs=1e-12)
    assert expected_atkinson(one, 1) >= 0.0


def test_expectation_large_n_limits():
    p15 = GammaParams(1.5)
    assert expected_theil_t(p15, 10**7) == pytest.approx(theil_t_population(p15), abs=1e-6)
    one = GammaParams(1.0)
    assert expected_atkinson(one, 10**7) == pytest.approx(atkinson_population(one), abs=1e-6)


def test_expectation_cross_identity():
    for alpha in IDENTITY_ALPHAS:
        params = GammaParams(alpha)
        for n in IDENTITY_NS:
            lhs = expected_theil_l(params, n)
            rhs = 1.0 / alpha - 1.0 / (n * alpha) - expected_theil_t(params, n)
            assert abs(lhs - rhs) <= 1e-12


def test_bias_examples():
    one = GammaParams(1.0)
    assert bias_theil_t(one, 2) == pytest.approx(B_TT_1_2, abs=1e-12)
    assert bias_theil_t(one, 1) == pytest.approx(B_TT_1_1, abs=1e-12)
    assert bias_theil_l(one, 2) == pytest.approx(B_TL_1_2, abs=1e-12)
    assert bias_theil_l(one, 1) == pytest.approx(B_TL_1_1, abs=1e-12)
    assert bias_atkinson(one, 2) == pytest.approx(B_AT_1_2, abs=1e-12)
    assert bias_atkinson(one, 1) == pytest.approx(B_AT_1_1, abs=1e-12)


def test_bias_vanishing_limits():
    assert abs(bias_theil_t(GammaParams(1.0), 10**8)) <= 1e-7
    assert abs(bias_atkinson(GammaParams(2.0), 10**6)) <= 1e-5


def test_bias_signs_on_grid():
    for alpha in IDENTITY_ALPHAS:
        params = GammaParams(alpha)
        for n in IDENTITY_NS:
            bt = bias_theil_t(params, n)
            bl = bias_theil_l(params, n)
            ba = bias_atkinson(params, n)
            assert bt < 0.0
            assert bl < 0.0
            assert ba <= 0.0
            assert bt > -1.0 / (n * alpha)


def test_bias_identity_with_theil_t():
    for alpha in IDENTITY_ALPHAS:
        params = GammaParams(alpha)
        for n in IDENTITY_NS:
            lhs = bias_theil_l(params, n)
            rhs = -bias_theil_t(params, n) - 1.0 / (n * alpha)
            assert abs(lhs - rhs) <= 1e-12


def test_expectation_minus_population_equals_bias():
    for alpha in IDENTITY_ALPHAS:
        params = GammaParams(alpha)
        for n in IDENTITY_NS:
            assert abs(
                expected_theil_t(params, n) - theil_t_population(params) - bias_theil_t(params, n)
            ) <= 1e-12
            assert abs(
                expected_theil_l(params, n) - theil_l_population(params) - bias_theil_l(params, n)
            ) <= 1e-12
            assert abs(
                expected_atkinson(params, n) - atkinson_population(params) - bias_atkinson(params, n)
            ) <= 1e-12


def test_bias_n_validation():
    with pytest.raises(DomainError):
        expected_theil_t(GammaParams(1.0), 0)
    with pytest.raises(DomainError):
        bias_atkinson(GammaParams(1.0), -3)
    with pytest.raises(DomainError):
        expected_atkinson(GammaParams(1.0), 2.0)


def test_sample_validation():
    with pytest.raises(DomainError):
        Sample([])
    with pytest.raises(DomainError):
        Sample([[1.0, 2.0]])
    with pytest.raises(DomainError) as err:
        Sample([1.0, 2.0, -3.0])
    assert "observation 2" in str(err.value)
    for bad in (0.0, math.nan, math.inf):
        with pytest.raises(DomainError):
            Sample([1.0, bad])
    with pytest.raises(DomainError):
        Sample(["a", "b"])


def test_sample_is_frozen_copy():
    source = np.array([1.0, 2.0, 3.0])
    sample = Sample(source)
    source[0] = 99.0
    assert sample.observations[0] == 1.0
    with pytest.raises(ValueError):
        sample.observations[0] = 5.0
    assert sample.n == 3
    assert sample == Sample([1.0, 2.0, 3.0])
    assert hash(sample) == hash(Sample([1.0, 2.0, 3.0]))


def test_sampler_determinism():
    a = sample_gamma(GammaParams(1.5), 10, derive_stream(9, 0, 0, 0))
    b = sample_gamma(GammaParams(1.5), 10, derive_stream(9, 0, 0, 0))
    assert np.array_equal(a.observations, b.observations)
    c = sample_gamma(GammaParams(1.5), 10, derive_stream(9, 0, 0, 1))
    assert not np.array_equal(a.observations, c.observations)


def test_sampler_mean_alpha_2():
    draws = sample_gamma(GammaParams(2.0), 1_000_000, derive_stream(101, 0, 0, 0))
    se = math.sqrt(2.0) / 1000.0
    assert draws.observations.mean() == pytest.approx(2.0, abs=4 * se)
    assert draws.observations.min() > 0.0


def test_sampler_variance_alpha_tenth():
    draws = sample_gamma(GammaParams(0.1), 1_000_000, derive_stream(102, 0, 0, 0))
    # Var(sample variance) ~ (mu4 - sigma^4)/N with mu4 = 3a^2 + 6a
    alpha = 0.1
    se = math.sqrt((3 * alpha**2 + 6 * alpha - alpha**2) / 1_000_000)
    assert draws.observations.var() == pytest.approx(alpha, abs=5 * se)
    assert draws.observations.min() > 0.0


def test_sampler_rate_is_exact_rescale():
    base = sample_gamma(GammaParams(1.5, 1.0), 1000, derive_stream(103, 0, 0, 0))
    scaled = sample_gamma(GammaParams(1.5, 4.0), 1000, derive_stream(103, 0, 0, 0))
    assert np.array_equal(scaled.observations, base.observations / 4.0)


@pytest.mark.parametrize("alpha", [0.1, 1.0, 1.5, 7.3])
def test_sampler_distribution_ks(alpha):
    draws = sample_gamma(GammaParams(alpha), 200_000, derive_stream(104, 0, 0, 0))
    result = stats.kstest(draws.observations, "gamma", args=(alpha,))
    assert result.pvalue > 1e-4


def test_sampler_validation():
    with pytest.raises(DomainError):
        sample_gamma(GammaParams(1.0), 0, derive_stream(1, 0, 0, 0))
    with pytest.raises(DomainError):
        sample_gamma(GammaParams(1.0), 5, np.random.RandomState(0))
