"""Closed-form failure bound and its Monte Carlo check.

With an independent per-turn error probability eps, the chance that an
n-turn horizon contains at least one error is 1 - (1 - eps)^n.  The
Monte Carlo estimator simulates exactly that experiment; the simulation
loop lives in the compiled/fallback kernel (`inquest._kernels`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .._kernels import count_failures
from ..errors import InvalidParams


def _check(epsilon: float, n: int) -> None:
    if not 0.0 <= epsilon <= 1.0:
        raise InvalidParams(f"epsilon must lie in [0, 1], got {epsilon}")
    if n < 0 or int(n) != n:
        raise InvalidParams(f"n must be a non-negative integer, got {n}")


def failure_bound(epsilon: float, n: int) -> float:
    """Probability of at least one error across n independent turns."""
    _check(epsilon, n)
    return 1.0 - (1.0 - epsilon) ** n


@dataclass(frozen=True)
class FailureEstimate:
    estimate: float
    half_width_95: float


def monte_carlo_failure(
    epsilon: float, n: int, trials: int, seed: int = 0
) -> FailureEstimate:
    """Estimate the failure probability by simulating `trials` horizons.

    Deterministic per seed.  half_width_95 is the normal-approximation
    95% confidence half width 1.96 * sqrt(p(1-p)/trials).
    """
    _check(epsilon, n)
    if trials < 1:
        raise InvalidParams(f"trials must be >= 1, got {trials}")
    failures = count_failures(np.random.PCG64(seed), epsilon, int(n), int(trials))
    p = failures / trials
    half_width = 1.96 * math.sqrt(p * (1.0 - p) / trials)
    return FailureEstimate(estimate=p, half_width_95=half_width)
