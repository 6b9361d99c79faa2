"""The registered model zoo: every compressor the harness can run.

Each entry binds a model id to a dataset kind, a builder (which may train
on the dataset, with the trained state going into the header), and a
header deserializer for the decode side.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Callable

import numpy as np

from ..coding import (
    AdaptiveCountsSource,
    ArithDecoder,
    ArithEncoder,
    BitString,
    CumulativeTable,
    StaticSource,
    TableSource,
)
from ..models import ProbModel, SequentialModel
from ..image import DeltaImageModel, InterpTripleModel
from ..numeric.families import FamilyCoder, FamilyModel, select_family
from ..numeric.geometric import (
    GeometricCoder,
    decode_online_adaptive,
    encode_online_adaptive,
    mle_lambda,
)
from ..text import EnhancedLetterModel, NgramModel, train_enhanced, train_ngram
from .fixtures import wordlist_text


# -- bit-string models -------------------------------------------------------

class BitSequenceModel(SequentialModel):
    """Codes input as individual bits, most significant first."""

    kind = "bitstrings"

    def symbolize(self, raw: bytes) -> list[int]:
        out = []
        for b in raw:
            out.extend((b >> (7 - i)) & 1 for i in range(8))
        return out

    def desymbolize(self, symbols: list[int]) -> bytes:
        out = bytearray()
        for i in range(0, len(symbols), 8):
            byte = 0
            for b in symbols[i:i + 8]:
                byte = (byte << 1) | b
            out.append(byte)
        return bytes(out)

    def n_symbols_for_length(self, n_bytes: int) -> int:
        return 8 * n_bytes

    def header_bytes(self) -> bytes:
        return b""


class UniformBitModel(BitSequenceModel):
    model_id = "uniform-bit"

    @classmethod
    def from_header(cls, header: bytes) -> "UniformBitModel":
        return cls()

    def table_source(self) -> TableSource:
        return StaticSource(CumulativeTable([1, 1]))


class BiasedZeroBitModel(BitSequenceModel):
    """Static bit model with P(0) = 0.9: shrinks zero-runs, inflates noise."""

    model_id = "biased-zero-bit"

    @classmethod
    def from_header(cls, header: bytes) -> "BiasedZeroBitModel":
        return cls()

    def table_source(self) -> TableSource:
        return StaticSource(CumulativeTable([9, 1]))


class AdaptiveBitModel(BitSequenceModel):
    model_id = "adaptive-bit"

    @classmethod
    def from_header(cls, header: bytes) -> "AdaptiveBitModel":
        return cls()

    def table_source(self) -> TableSource:
        return AdaptiveCountsSource(2)


class UniformByteModel(SequentialModel):
    """Identity-strength baseline: 8 bits per byte, no structure assumed."""

    model_id = "uniform-byte"
    kind = "bitstrings"

    def symbolize(self, raw: bytes) -> list[int]:
        return list(raw)

    def desymbolize(self, symbols: list[int]) -> bytes:
        return bytes(symbols)

    def n_symbols_for_length(self, n_bytes: int) -> int:
        return n_bytes

    def table_source(self) -> TableSource:
        return StaticSource(CumulativeTable([1] * 256))

    def header_bytes(self) -> bytes:
        return b""

    @classmethod
    def from_header(cls, header: bytes) -> "UniformByteModel":
        return cls()


# -- integer-stream models ---------------------------------------------------

def parse_int_lines(raw: bytes) -> list[int]:
    values = []
    for lineno, line in enumerate(raw.decode("ascii").splitlines(), start=1):
        line = line.strip()
        if not line:
            continue
        v = int(line)
        if v < 0:
            raise ValueError(f"line {lineno}: negative value {v}")
        values.append(v)
    return values


def int_lines_bytes(values) -> bytes:
    return "".join(f"{v}\n" for v in values).encode("ascii")


class _IntStreamModel(ProbModel):
    kind = "integers"

    def _encode_values(self, enc: ArithEncoder, values: list[int]):
        raise NotImplementedError

    def _decode_values(self, dec: ArithDecoder, target_bytes: int) -> list[int]:
        raise NotImplementedError

    def encode_payload(self, raw: bytes) -> BitString:
        enc = ArithEncoder()
        self._encode_values(enc, parse_int_lines(raw))
        return enc.finish()

    def decode_payload(self, bits: BitString, original_length: int) -> bytes:
        dec = ArithDecoder(bits)
        return int_lines_bytes(self._decode_values(dec, original_length))


def _decode_until_length(target_bytes: int, decode_one) -> list[int]:
    # each value occupies len(str(v)) + 1 bytes in the canonical file
    values = []
    remaining = target_bytes
    while remaining > 0:
        v = decode_one()
        values.append(v)
        remaining -= len(str(v)) + 1
    if remaining != 0:
        raise ValueError("decoded values do not tile the original byte length")
    return values


class GeometricFixedModel(_IntStreamModel):
    """Fixed-rate geometric coder; the guessed rate rides in the header."""

    model_id = "geometric-fixed"
    DEFAULT_RATE = 2.0

    def __init__(self, rate: float | None = None):
        self.rate = self.DEFAULT_RATE if rate is None else rate

    def header_bytes(self) -> bytes:
        return struct.pack("<d", self.rate)

    @classmethod
    def from_header(cls, header: bytes) -> "GeometricFixedModel":
        return cls(struct.unpack("<d", header)[0])

    def _encode_values(self, enc, values):
        coder = GeometricCoder(self.rate)
        for v in values:
            coder.encode_value(enc, v)

    def _decode_values(self, dec, target_bytes):
        coder = GeometricCoder(self.rate)
        return _decode_until_length(target_bytes, lambda: coder.decode_value(dec))


class GeometricHeaderModel(_IntStreamModel):
    """Two-part geometric coder: rate fitted to the data, 64-bit header."""

    model_id = "geometric-header"

    def __init__(self, rate: float):
        (self.rate,) = struct.unpack("<d", struct.pack("<d", rate))

    @classmethod
    def fit(cls, raw: bytes) -> "GeometricHeaderModel":
        return cls(mle_lambda(parse_int_lines(raw)))

    def header_bytes(self) -> bytes:
        return struct.pack("<d", self.rate)

    @classmethod
    def from_header(cls, header: bytes) -> "GeometricHeaderModel":
        return cls(struct.unpack("<d", header)[0])

    _encode_values = GeometricFixedModel._encode_values
    _decode_values = GeometricFixedModel._decode_values


class GeometricOnlineModel(_IntStreamModel):
    """Header-free universal coder with a running rate estimate."""

    model_id = "geometric-online"

    def header_bytes(self) -> bytes:
        return b""

    @classmethod
    def from_header(cls, header: bytes) -> "GeometricOnlineModel":
        return cls()

    def encode_payload(self, raw: bytes) -> BitString:
        _, _, bits = encode_online_adaptive(parse_int_lines(raw))
        return bits

    def decode_payload(self, bits: BitString, original_length: int) -> bytes:
        from ..numeric.geometric import _cached_coder, _online_lambda

        dec = ArithDecoder(bits)
        state = {"sum": 0, "n": 0}

        def decode_one():
            coder = _cached_coder(_online_lambda(state["sum"], state["n"]))
            v = coder.decode_value(dec)
            state["sum"] += v
            state["n"] += 1
            return v

        return int_lines_bytes(_decode_until_length(original_length, decode_one))


class FamilySelectModel(_IntStreamModel):
    """Meta-format: pick the best of four families, name it in the header."""

    model_id = "family-select"

    def __init__(self, fitted: FamilyModel):
        self.fitted = fitted

    @classmethod
    def fit(cls, raw: bytes) -> "FamilySelectModel":
        fitted, _ = select_family(parse_int_lines(raw))
        # round-trip the parameters through their wire format
        packed = struct.pack(f"<{len(fitted.params)}d", *fitted.params)
        params = struct.unpack(f"<{len(fitted.params)}d", packed)
        return cls(FamilyModel(fitted.family, params))

    def header_bytes(self) -> bytes:
        fam = self.fitted.family.encode("ascii")
        return struct.pack("<B", len(fam)) + fam + struct.pack(
            f"<{len(self.fitted.params)}d", *self.fitted.params)

    @classmethod
    def from_header(cls, header: bytes) -> "FamilySelectModel":
        (famlen,) = struct.unpack_from("<B", header, 0)
        family = header[1:1 + famlen].decode("ascii")
        nparams = (len(header) - 1 - famlen) // 8
        params = struct.unpack_from(f"<{nparams}d", header, 1 + famlen)
        return cls(FamilyModel(family, params))

    def _encode_values(self, enc, values):
        coder = FamilyCoder(self.fitted)
        for v in values:
            coder.encode_value(enc, v)

    def _decode_values(self, dec, target_bytes):
        coder = FamilyCoder(self.fitted)
        return _decode_until_length(target_bytes, lambda: coder.decode_value(dec))


# -- the registry table ------------------------------------------------------

@dataclass(frozen=True)
class ModelSpec:
    model_id: str
    kind: str
    build: Callable[[bytes], ProbModel]        # may train on the dataset
    from_header: Callable[[bytes], ProbModel]
    sampleable: bool = False
    default_instance: Callable[[], ProbModel] | None = None


def _trained_ngram(order, model_id):
    def build(raw: bytes):
        return train_ngram(raw.decode("utf-8"), order, model_id=model_id)
    return build


def _default_ngram(order, model_id):
    def make():
        return train_ngram(wordlist_text(), order, model_id=model_id)
    return make


def _named_ngram_from_header(model_id):
    def load(header: bytes):
        m = NgramModel.from_header(header)
        m.model_id = model_id
        return m
    return load


MODEL_SPECS: dict[str, ModelSpec] = {}


def _register(spec: ModelSpec):
    MODEL_SPECS[spec.model_id] = spec


_register(ModelSpec("uniform-bit", "bitstrings", lambda raw: UniformBitModel(),
                    UniformBitModel.from_header, sampleable=True,
                    default_instance=UniformBitModel))
_register(ModelSpec("biased-zero-bit", "bitstrings", lambda raw: BiasedZeroBitModel(),
                    BiasedZeroBitModel.from_header, sampleable=True,
                    default_instance=BiasedZeroBitModel))
_register(ModelSpec("adaptive-bit", "bitstrings", lambda raw: AdaptiveBitModel(),
                    AdaptiveBitModel.from_header, sampleable=True,
                    default_instance=AdaptiveBitModel))
_register(ModelSpec("uniform-byte", "bitstrings", lambda raw: UniformByteModel(),
                    UniformByteModel.from_header, sampleable=True,
                    default_instance=UniformByteModel))
_register(ModelSpec("letter-1gram", "text", _trained_ngram(1, "letter-1gram"),
                    _named_ngram_from_header("letter-1gram"), sampleable=True,
                    default_instance=_default_ngram(1, "letter-1gram")))
_register(ModelSpec("letter-2gram", "text", _trained_ngram(2, "letter-2gram"),
                    _named_ngram_from_header("letter-2gram"), sampleable=True,
                    default_instance=_default_ngram(2, "letter-2gram")))
_register(ModelSpec("letter-enhanced", "text",
                    lambda raw: train_enhanced(raw.decode("utf-8")),
                    EnhancedLetterModel.from_header, sampleable=True,
                    default_instance=lambda: train_enhanced(wordlist_text())))
_register(ModelSpec("geometric-fixed", "integers", lambda raw: GeometricFixedModel(),
                    GeometricFixedModel.from_header))
_register(ModelSpec("geometric-header", "integers", GeometricHeaderModel.fit,
                    GeometricHeaderModel.from_header))
_register(ModelSpec("geometric-online", "integers", lambda raw: GeometricOnlineModel(),
                    GeometricOnlineModel.from_header))
_register(ModelSpec("family-select", "integers", FamilySelectModel.fit,
                    FamilySelectModel.from_header))
_register(ModelSpec("delta-image", "image", DeltaImageModel.for_raw,
                    DeltaImageModel.from_header))
_register(ModelSpec("interp-triple", "frame-triple", InterpTripleModel.for_raw,
                    InterpTripleModel.from_header))


def resolve_model(model_id: str, header: bytes) -> ProbModel:
    spec = MODEL_SPECS.get(model_id)
    if spec is None:
        raise KeyError(f"unknown model {model_id!r}")
    return spec.from_header(header)


def bitstring_models() -> list[str]:
    return [mid for mid, spec in MODEL_SPECS.items()
            if spec.kind == "bitstrings" and mid != "uniform-byte"]
