"""Distribution-family selection by two-part codelength.

Four candidate families over nonnegative integers: geometric, Poisson, and
discretized Gaussian/Laplace (density integrated over unit bins, truncated
at zero, renormalized). Each is fitted by its standard estimator and scored
as 2 bits of family id + 32 bits per real parameter + payload; the shortest
total wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import stats

from ..coding import quantize_distribution
from ..models import NetScore, score_two_part
from .geometric import LAMBDA_MAX, geometric_pmf, mle_lambda, support_size

FAMILIES = ("geometric", "poisson", "gaussian", "laplace")

FAMILY_ID_BITS = 2
PARAM_BITS = 32

_SIGMA_FLOOR = 0.25
_TAIL = 1e-12


@dataclass(frozen=True)
class FamilyModel:
    family: str
    params: tuple[float, ...]

    @property
    def model_bits(self) -> int:
        return FAMILY_ID_BITS + PARAM_BITS * len(self.params)


def _truncation_point(family: str, params, data_max: int) -> int:
    if family == "geometric":
        k = support_size(params[0])
    elif family == "poisson":
        k = int(stats.poisson.ppf(1.0 - _TAIL, params[0])) + 2
    elif family == "gaussian":
        k = int(math.ceil(params[0] + params[1] * 8.0)) + 2
    else:  # laplace
        b = params[1]
        k = int(math.ceil(params[0] - b * math.log(2 * _TAIL))) + 2
    return max(k, data_max + 1, 2)


def family_pmf(model: FamilyModel, support: int) -> np.ndarray:
    """Probability table over 0..support-1, truncated and renormalized."""
    x = np.arange(support)
    if model.family == "geometric":
        p = geometric_pmf(model.params[0], support)
    elif model.family == "poisson":
        p = stats.poisson.pmf(x, model.params[0])
    elif model.family == "gaussian":
        mu, sigma = model.params
        p = stats.norm.cdf(x + 0.5, mu, sigma) - stats.norm.cdf(np.where(x == 0, -np.inf, x - 0.5), mu, sigma)
    elif model.family == "laplace":
        mu, b = model.params
        p = stats.laplace.cdf(x + 0.5, mu, b) - stats.laplace.cdf(np.where(x == 0, -np.inf, x - 0.5), mu, b)
    else:
        raise ValueError(f"unknown family {model.family}")
    total = p.sum()
    if total <= 0:
        raise ValueError("degenerate truncated pmf")
    return p / total


def fit_family(family: str, data) -> FamilyModel:
    xs = np.asarray(list(data), dtype=float)
    if xs.size == 0:
        raise ValueError("data is empty")
    if family == "geometric":
        return FamilyModel("geometric", (mle_lambda(xs),))
    if family == "poisson":
        return FamilyModel("poisson", (max(float(xs.mean()), 1e-6),))
    if family == "gaussian":
        return FamilyModel("gaussian", (float(xs.mean()), max(float(xs.std()), _SIGMA_FLOOR)))
    if family == "laplace":
        mu = float(np.median(xs))
        b = max(float(np.abs(xs - mu).mean()), _SIGMA_FLOOR)
        return FamilyModel("laplace", (mu, b))
    raise ValueError(f"unknown family {family}")


def family_payload_bits(model: FamilyModel, data) -> float:
    """Realized payload under the quantized coding table (vectorized)."""
    xs = np.asarray(list(data), dtype=np.int64)
    support = _truncation_point(model.family, model.params, int(xs.max()))
    pmf = family_pmf(model, support)
    # coding floor: every in-support value must stay encodable even where
    # the fitted density underflows to zero
    pmf = np.maximum(pmf, 1e-15)
    table = quantize_distribution(pmf / pmf.sum())
    cum = np.asarray(table.cum, dtype=np.int64)
    freqs = (cum[1:] - cum[:-1]).astype(float)
    values, counts = np.unique(xs, return_counts=True)
    return float(-(counts * np.log2(freqs[values] / table.total)).sum())


def select_family(data) -> tuple[FamilyModel, NetScore]:
    """Fit every family and return the one with the shortest two-part code.

    Ties resolve in FAMILIES enumeration order.
    """
    xs = list(data)
    if not xs:
        raise ValueError("data is empty")
    best: tuple[FamilyModel, NetScore] | None = None
    for family in FAMILIES:
        model = fit_family(family, xs)
        payload = math.ceil(family_payload_bits(model, xs))
        score = score_two_part(model.model_bits, payload)
        if best is None or score.total < best[1].total:
            best = (model, score)
    return best


class FamilyCoder:
    """Arithmetic coding of nonnegative integers under a fitted family.

    Support is tail-based only (no peeking at the data), with an escape
    symbol carrying values beyond the truncation point as gamma codes, so
    encoder and decoder agree from the parameters alone.
    """

    def __init__(self, model: FamilyModel):
        from ..coding import CumulativeTable

        self.model = model
        self.support = _truncation_point(model.family, model.params, 0)
        pmf = family_pmf(model, self.support)
        pmf = np.maximum(pmf, 1e-15)
        probs = np.append(pmf, max(pmf.sum() * _TAIL, 1e-300))
        self.table = quantize_distribution(probs / probs.sum())
        self._half = CumulativeTable([1, 1])

    def encode_value(self, enc, x: int):
        if x < 0:
            raise ValueError("values must be nonnegative")
        if x < self.support:
            enc.encode_symbol(self.table, x)
            return
        enc.encode_symbol(self.table, self.support)
        v = x - self.support + 1
        n = v.bit_length()
        for _ in range(n - 1):
            enc.encode_symbol(self._half, 0)
        for shift in range(n - 1, -1, -1):
            enc.encode_symbol(self._half, (v >> shift) & 1)

    def decode_value(self, dec) -> int:
        s = dec.decode_symbol(self.table)
        if s < self.support:
            return s
        nzeros = 0
        while dec.decode_symbol(self._half) == 0:
            nzeros += 1
            if nzeros > 64:
                raise ValueError("malformed escape code")
        v = 1
        for _ in range(nzeros):
            v = (v << 1) | dec.decode_symbol(self._half)
        return self.support + v - 1


def sample_family(family: str, params: tuple[float, ...], n: int, seed: int) -> list[int]:
    """Seeded synthetic integer stream from a named family."""
    rng = np.random.default_rng(seed)
    if family == "geometric":
        p = 1.0 - math.exp(-params[0])
        return (rng.geometric(p, size=n) - 1).tolist()
    if family == "poisson":
        return rng.poisson(params[0], size=n).tolist()
    if family == "gaussian":
        xs = np.rint(rng.normal(params[0], params[1], size=n))
        return np.clip(xs, 0, None).astype(int).tolist()
    if family == "laplace":
        xs = np.rint(rng.laplace(params[0], params[1], size=n))
        return np.clip(xs, 0, None).astype(int).tolist()
    raise ValueError(f"unknown family {family}")
