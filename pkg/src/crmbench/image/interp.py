"""Frame-triple coding: predict the middle frame, code the residual under a
gradient-scaled discretized Gaussian.

The per-pixel residual scale is the squared gradient magnitude of the
predicted frame plus a regularizer: prediction errors are cheap where the
image is busy and expensive where it is flat, which is exactly where a
good predictor should not be missing.
"""

from __future__ import annotations

import math
import struct
from dataclasses import dataclass

import numpy as np

from ..coding import (
    ArithDecoder,
    ArithEncoder,
    BitString,
    CumulativeTable,
    quantize_distribution,
)
from ..models import ProbModel
from .delta import DIFF_OFFSET, N_DIFF_SYMBOLS, _code_image_residuals, _decode_image_residuals
from .pgm import GrayImage, parse_pgm, pgm_bytes

LN2 = math.log(2.0)
DEFAULT_EPSILON = 1.0

_RESIDUAL_RANGE = np.arange(-DIFF_OFFSET, DIFF_OFFSET + 1, dtype=float)


@dataclass(frozen=True)
class FrameTriple:
    a: GrayImage
    b: GrayImage
    c: GrayImage
    epsilon: float = DEFAULT_EPSILON

    def __post_init__(self):
        shapes = {self.a.pixels.shape, self.b.pixels.shape, self.c.pixels.shape}
        if len(shapes) != 1:
            raise ValueError("frame dimensions differ")
        if self.epsilon <= 0:
            raise ValueError("epsilon must be positive")


def interp_predict(a: GrayImage, c: GrayImage) -> GrayImage:
    """Per-pixel rounded mean of the flanking frames (round half up)."""
    if a.pixels.shape != c.pixels.shape:
        raise ValueError("frame dimensions differ")
    s = a.pixels.astype(np.int32) + c.pixels.astype(np.int32)
    return GrayImage(((s + 1) // 2).astype(np.uint8))


def gradient_sq(img: GrayImage) -> np.ndarray:
    """Forward-difference squared gradient magnitude; one-sided at borders."""
    p = img.pixels.astype(np.int64)
    gx = np.empty_like(p)
    gx[:, :-1] = p[:, 1:] - p[:, :-1]
    gx[:, -1] = p[:, -1] - p[:, -2] if p.shape[1] > 1 else 0
    gy = np.empty_like(p)
    gy[:-1, :] = p[1:, :] - p[:-1, :]
    gy[-1, :] = p[-1, :] - p[-2, :] if p.shape[0] > 1 else 0
    return gx * gx + gy * gy


_table_cache: dict = {}

_HALF = CumulativeTable([1, 1])


def residual_table(scale_sq: float) -> tuple[CumulativeTable, int]:
    """Quantized discretized Gaussian over residuals -kmax..kmax plus escape.

    The Gaussian variance is scale_sq / 2, so -ln q(r) = r^2/scale_sq + ln Z.
    Support is clipped where the tail mass drops below ~1e-12; larger
    residuals go through the escape symbol, so the codec stays lossless
    without flooring all 511 difference values into the table.
    """
    key = round(float(scale_sq), 9)
    cached = _table_cache.get(key)
    if cached is None:
        kmax = min(int(math.ceil(math.sqrt(27.7 * scale_sq))) + 1, DIFF_OFFSET)
        ks = np.arange(-kmax, kmax + 1, dtype=float)
        q = np.exp(-np.minimum(ks * ks / scale_sq, 700.0))
        q = np.append(q, max(q.sum() * 1e-12, 1e-300))  # escape slot
        cached = (quantize_distribution(q / q.sum(), total=1 << 16), kmax)
        _table_cache[key] = cached
    return cached


def _encode_residual(enc: ArithEncoder, r: int, scale_sq: float):
    table, kmax = residual_table(scale_sq)
    if abs(r) <= kmax:
        enc.encode_symbol(table, r + kmax)
        return
    enc.encode_symbol(table, 2 * kmax + 1)
    enc.encode_symbol(_HALF, 1 if r < 0 else 0)
    v = abs(r) - kmax  # >= 1, gamma-coded through the 50/50 table
    n = v.bit_length()
    for _ in range(n - 1):
        enc.encode_symbol(_HALF, 0)
    for shift in range(n - 1, -1, -1):
        enc.encode_symbol(_HALF, (v >> shift) & 1)


def _decode_residual(dec: ArithDecoder, scale_sq: float) -> int:
    table, kmax = residual_table(scale_sq)
    s = dec.decode_symbol(table)
    if s <= 2 * kmax:
        return s - kmax
    sign = -1 if dec.decode_symbol(_HALF) else 1
    nzeros = 0
    while dec.decode_symbol(_HALF) == 0:
        nzeros += 1
        if nzeros > 64:
            raise ValueError("malformed escape code")
    v = 1
    for _ in range(nzeros):
        v = (v << 1) | dec.decode_symbol(_HALF)
    return sign * (kmax + v)


def _log_norm(scale_sq: float) -> float:
    q = np.exp(-np.minimum(_RESIDUAL_RANGE**2 / scale_sq, 700.0))
    return float(np.log(q.sum()))


def interp_residual_codelength(b: GrayImage, b_hat: GrayImage, epsilon: float = DEFAULT_EPSILON) -> float:
    """Formula-side codelength in bits: squared error over (gradient^2 + eps)
    plus the per-pixel discretized-Gaussian normalizer."""
    if b.pixels.shape != b_hat.pixels.shape:
        raise ValueError("frame dimensions differ")
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    r = b.pixels.astype(np.float64) - b_hat.pixels.astype(np.float64)
    scale = gradient_sq(b_hat).astype(np.float64) + epsilon
    residual_nats = float((r * r / scale).sum())
    # normalizer summed per pixel, grouped by distinct scale values
    uniq, counts = np.unique(scale, return_counts=True)
    norm_nats = float(sum(cnt * _log_norm(s) for s, cnt in zip(uniq, counts)))
    return (residual_nats + norm_nats) / LN2


def _code_b_residuals(enc: ArithEncoder, b: GrayImage, b_hat: GrayImage, epsilon: float):
    scale = gradient_sq(b_hat) + epsilon
    r = (b.pixels.astype(np.int64) - b_hat.pixels.astype(np.int64)).ravel()
    for ri, sc in zip(r, scale.ravel()):
        _encode_residual(enc, int(ri), float(sc))


def _decode_b_residuals(dec: ArithDecoder, b_hat: GrayImage, epsilon: float) -> GrayImage:
    scale = gradient_sq(b_hat) + epsilon
    out = np.empty(b_hat.pixels.shape, dtype=np.int64)
    flat_hat = b_hat.pixels.astype(np.int64).ravel()
    flat_out = out.ravel()
    for i, sc in enumerate(scale.ravel()):
        r = _decode_residual(dec, float(sc))
        flat_out[i] = min(255, max(0, flat_hat[i] + r))
    return GrayImage(out.astype(np.uint8))


class InterpTripleModel(ProbModel):
    """Lossless codec for a three-frame file: A and C delta-coded, B coded
    as a residual against the interpolated prediction."""

    model_id = "interp-triple"
    kind = "frame-triple"

    def __init__(self, width: int, height: int, epsilon: float = DEFAULT_EPSILON):
        self.width = width
        self.height = height
        self.epsilon = epsilon

    @classmethod
    def for_raw(cls, raw: bytes) -> "InterpTripleModel":
        triple = parse_triple(raw)
        return cls(triple.a.width, triple.a.height, triple.epsilon)

    def header_bytes(self) -> bytes:
        return struct.pack("<IId", self.width, self.height, self.epsilon)

    @classmethod
    def from_header(cls, header: bytes) -> "InterpTripleModel":
        width, height, epsilon = struct.unpack("<IId", header)
        return cls(width, height, epsilon)

    def encode_payload(self, raw: bytes) -> BitString:
        triple = parse_triple(raw, epsilon=self.epsilon)
        enc = ArithEncoder()
        _code_image_residuals(enc, triple.a)
        _code_image_residuals(enc, triple.c)
        b_hat = interp_predict(triple.a, triple.c)
        _code_b_residuals(enc, triple.b, b_hat, self.epsilon)
        return enc.finish()

    def decode_payload(self, bits: BitString, original_length: int) -> bytes:
        dec = ArithDecoder(bits)
        a = _decode_image_residuals(dec, self.width, self.height)
        c = _decode_image_residuals(dec, self.width, self.height)
        b_hat = interp_predict(a, c)
        b = _decode_b_residuals(dec, b_hat, self.epsilon)
        return triple_bytes(FrameTriple(a, b, c, self.epsilon))


def triple_bytes(triple: FrameTriple) -> bytes:
    return pgm_bytes(triple.a) + pgm_bytes(triple.b) + pgm_bytes(triple.c)


def parse_triple(raw: bytes, epsilon: float = DEFAULT_EPSILON) -> FrameTriple:
    a, off = parse_pgm(raw)
    b, off = parse_pgm(raw, off)
    c, off = parse_pgm(raw, off)
    if off != len(raw):
        raise ValueError("trailing bytes after third frame")
    return FrameTriple(a, b, c, epsilon)


def interp_encode(triple: FrameTriple):
    from ..models import encode_container

    model = InterpTripleModel(triple.a.width, triple.a.height, triple.epsilon)
    return encode_container(model, triple_bytes(triple))


def interp_decode(container) -> FrameTriple:
    model = InterpTripleModel.from_header(container.model_header)
    return parse_triple(model.decode_payload(container.payload, container.original_length),
                        epsilon=model.epsilon)


@dataclass(frozen=True)
class InterpReport:
    b_interp_bits: float
    b_delta_bits: int
    prediction_helped: bool


def interp_efficiency_report(triple: FrameTriple) -> InterpReport:
    """Compare B coded against the prediction vs B delta-coded alone.

    When the frames are uncorrelated the interpolation path loses; backing
    off is the caller's decision, this just flags it.
    """
    from .delta import delta_encode

    b_hat = interp_predict(triple.a, triple.c)
    enc = ArithEncoder()
    _code_b_residuals(enc, triple.b, b_hat, triple.epsilon)
    interp_bits = enc.finish().length_bits
    delta_bits = delta_encode(triple.b).payload.length_bits
    return InterpReport(interp_bits, delta_bits, interp_bits < delta_bits)
