"""Generalization-bound calculators.

Every returned value carries an explicit unit tag; class sizes are handled
in natural log internally. Log-size figures like 48.8 and 36.8 are
natural-log values even where the source labels them just "log".
"""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class HypothesisClassSpec:
    ln_size: float
    exact_size: int | None = None

    def __post_init__(self):
        if self.ln_size < 0:
            raise ValueError("ln_size must be nonnegative")
        if self.exact_size is not None:
            if self.exact_size < 1:
                raise ValueError("exact size must be positive")
            if abs(math.log(self.exact_size) - self.ln_size) > 1e-9:
                raise ValueError("ln_size inconsistent with exact size")

    @classmethod
    def of_size(cls, size: int) -> "HypothesisClassSpec":
        return cls(math.log(size), size)


@dataclass(frozen=True)
class BoundResult:
    quantity: str
    value: float
    unit: str  # samples | nats | bits | probability


def _check_eps_delta(epsilon: float, delta: float):
    if not 0 < epsilon < 1:
        raise ValueError(f"epsilon {epsilon} outside (0, 1)")
    if not 0 < delta < 1:
        raise ValueError(f"delta {delta} outside (0, 1)")


def required_samples(epsilon: float, delta: float, spec: HypothesisClassSpec) -> BoundResult:
    """Samples needed so a zero-empirical-error hypothesis generalizes:
    N >= (ln|C| - ln delta) / epsilon."""
    _check_eps_delta(epsilon, delta)
    n = math.ceil((spec.ln_size - math.log(delta)) / epsilon)
    return BoundResult("required_samples", max(n, 0), "samples")


def max_class_log_size(n: int, epsilon: float, delta: float) -> BoundResult:
    """Largest permissible ln|C| for N samples: N*epsilon - ln delta."""
    _check_eps_delta(epsilon, delta)
    if n < 0:
        raise ValueError("sample count must be nonnegative")
    return BoundResult("max_class_log_size", n * epsilon - math.log(delta), "nats")


def rule_class_log_size(k: int, e: int, d: int) -> BoundResult:
    """ln|C| for D conjunction slots over K thresholds x E indicators."""
    if k < 1 or e < 1 or d < 1:
        raise ValueError("all inputs must be positive integers")
    return BoundResult("rule_class_log_size", d * (math.log(k) + math.log(e)), "nats")


def hidden_worm_bound(spec: HypothesisClassSpec, epsilon: float, n: int) -> BoundResult:
    """Upper bound on the chance some zero-empirical-error hypothesis has
    true error above epsilon: min(1, |C| (1-epsilon)^N)."""
    if not 0 <= epsilon <= 1:
        raise ValueError("epsilon outside [0, 1]")
    if n < 0:
        raise ValueError("sample count must be nonnegative")
    value = min(1.0, math.exp(spec.ln_size + n * math.log1p(-epsilon))) if epsilon < 1 \
        else (0.0 if n >= 1 else min(1.0, math.exp(spec.ln_size)))
    return BoundResult("hidden_worm_bound", value, "probability")


def compression_view_codelength(found: bool, spec: HypothesisClassSpec, n: int) -> BoundResult:
    """Label-transmission cost: a 1-bit flag, then either the hypothesis
    index (log2|C| bits) or the N labels verbatim."""
    if n < 0:
        raise ValueError("sample count must be nonnegative")
    bits = 1.0 + (spec.ln_size / math.log(2) if found else float(n))
    return BoundResult("compression_view_codelength", bits, "bits")


def compression_generalization_bound(k_rate: float, n: int, delta: float) -> BoundResult:
    """Risk bound from an achieved compression rate (bits per sample):
    2 (K ln 2 - ln(delta)/N)."""
    if k_rate < 0:
        raise ValueError("compression rate must be nonnegative")
    if n < 1:
        raise ValueError("need at least one sample")
    if not 0 < delta <= 1:
        raise ValueError("delta outside (0, 1]")
    value = 2.0 * (k_rate * math.log(2) - math.log(delta) / n)
    return BoundResult("compression_generalization_bound", value, "probability")


def model_complexity_ceiling(n_labels: int, payload_bits_flat: int | None = None) -> BoundResult:
    """A model is only worth keeping if it undercuts the flat encoding it
    replaces; that flat cost is the absolute complexity ceiling."""
    if n_labels < 1:
        raise ValueError("need at least one label")
    ceiling = payload_bits_flat if payload_bits_flat is not None else n_labels
    if ceiling < 1:
        raise ValueError("flat payload must be positive")
    return BoundResult("model_complexity_ceiling", float(ceiling), "bits")
