"""Information measures over finite distributions.

All internal math is in natural logs; every public function takes an
explicit unit argument ("bits" or "nats") because the source material for
this project mixes the two freely.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

LN2 = math.log(2.0)

_UNITS = ("bits", "nats")


def _convert(nats: float, unit: str) -> float:
    if unit == "nats":
        return nats
    if unit == "bits":
        return nats / LN2
    raise ValueError(f"unknown unit {unit!r}; expected one of {_UNITS}")


@dataclass(frozen=True)
class SymbolDistribution:
    """Normalized probability vector over a finite alphabet."""

    probs: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float)
        object.__setattr__(self, "probs", p)
        if p.ndim != 1 or p.size == 0:
            raise ValueError("probs must be a nonempty 1-d vector")
        if np.any(p < 0):
            raise ValueError("negative probability")
        if abs(float(p.sum()) - 1.0) > 1e-9:
            raise ValueError(f"probabilities sum to {p.sum()}, not 1")

    @property
    def alphabet_size(self) -> int:
        return int(self.probs.size)

    @classmethod
    def uniform(cls, n: int) -> "SymbolDistribution":
        return cls(np.full(n, 1.0 / n))

    @classmethod
    def from_counts(cls, counts) -> "SymbolDistribution":
        c = np.asarray(counts, dtype=float)
        total = c.sum()
        if total <= 0:
            raise ValueError("counts must have positive total")
        return cls(c / total)


def shannon_codelength(p: float, unit: str = "bits") -> float:
    """Optimal codelength for an outcome of probability p."""
    if not 0.0 < p <= 1.0:
        raise ValueError(f"probability {p} outside (0, 1]")
    return _convert(-math.log(p), unit)


def entropy(d: SymbolDistribution, unit: str = "bits") -> float:
    p = d.probs
    nz = p > 0
    nats = float(-(p[nz] * np.log(p[nz])).sum())
    return _convert(nats, unit)


def cross_entropy(p: SymbolDistribution, q: SymbolDistribution, unit: str = "bits") -> float:
    if p.alphabet_size != q.alphabet_size:
        raise ValueError("alphabet size mismatch")
    pv, qv = p.probs, q.probs
    bad = (pv > 0) & (qv == 0)
    if np.any(bad):
        raise ValueError(f"support violation: q is zero at symbol {int(np.argmax(bad))}")
    nz = pv > 0
    nats = float(-(pv[nz] * np.log(qv[nz])).sum())
    return _convert(nats, unit)


def kl_divergence(p: SymbolDistribution, q: SymbolDistribution, unit: str = "bits") -> float:
    if p.alphabet_size != q.alphabet_size:
        raise ValueError("alphabet size mismatch")
    pv, qv = p.probs, q.probs
    bad = (pv > 0) & (qv == 0)
    if np.any(bad):
        raise ValueError(f"support violation: q is zero at symbol {int(np.argmax(bad))}")
    nz = pv > 0
    nats = float((pv[nz] * (np.log(pv[nz]) - np.log(qv[nz]))).sum())
    return _convert(nats, unit)


def kraft_sum(lengths) -> float:
    """Sum of 2^-L over a codelength assignment; <= 1 iff prefix-free feasible."""
    ls = list(lengths)
    if not ls:
        raise ValueError("empty codelength list")
    if any(l < 1 for l in ls):
        raise ValueError("codelengths must be >= 1")
    return float(sum(2.0 ** -l for l in ls))


def realized_codelength(data, prob_of) -> float:
    """Sum of -log2 Q(x_k) over a dataset, in bits.

    prob_of maps each datum to its model probability; a zero probability is
    an encoding failure and is reported with the offending index.
    """
    total = 0.0
    for i, x in enumerate(data):
        q = prob_of(x)
        if q <= 0:
            raise ValueError(f"model assigns zero probability to datum at index {i}")
        total -= math.log2(q)
    return total
