"""Monte Carlo check of the hidden-worm bound.

Hypotheses are modeled as independent Bernoulli(epsilon) error processes,
the i.i.d. worst case the bound covers. A hypothesis "survives" when it
makes no mistake on N samples, which happens with probability exactly
(1-epsilon)^N, so each trial draws the survivor count from a binomial
rather than simulating size*N coin flips individually.
"""

from __future__ import annotations

import math

import numpy as np

RESOURCE_LIMIT = 10**10


def simulate_hidden_worm(size: int, epsilon: float, n: int, trials: int, seed: int) -> float:
    """Empirical frequency of trials where at least one hypothesis survives."""
    if size < 1 or trials < 1:
        raise ValueError("size and trials must be positive")
    if not 0 <= epsilon <= 1:
        raise ValueError("epsilon outside [0, 1]")
    if n < 0:
        raise ValueError("sample count must be nonnegative")
    if size * max(n, 1) * trials > RESOURCE_LIMIT:
        raise ValueError("refused: size * N * trials exceeds resource guard")
    p_survive = (1.0 - epsilon) ** n
    rng = np.random.default_rng(seed)
    survivors = rng.binomial(size, p_survive, size=trials)
    return float((survivors > 0).mean())
