"""Shared fixtures: test grids and summary-statistics helpers."""

import math

import hypothesis

hypothesis.settings.register_profile("slow_box", deadline=None)
hypothesis.settings.load_profile("slow_box")

# identity/sign suite grid
IDENTITY_ALPHAS = (0.1, 0.5, 1.0, 1.5, 2.0, 10.0, 100.0)
IDENTITY_NS = (1, 2, 10, 200)


def se_from_summary(row):
    """Standard error of the mean estimate recovered from stored aggregates:
    SD^2 = mse - (mean - true)^2."""
    variance = row.mse - (row.mean_estimate - row.true_value) ** 2
    if variance < 0.0:
        variance = 0.0
    return math.sqrt(variance / row.n_effective)
