"""The pluggable model contract and two-part scoring.

A model is anything that can turn raw bytes into a bit payload and back,
and can reconstruct itself exactly from a serialized header. The header is
what the two-part score charges for: model bits + payload bits, smaller
total wins.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..coding import (
    BitString,
    TableSource,
    arith_decode,
    arith_encode,
)

SCORE_CAP = 2**63 - 1


@dataclass(frozen=True)
class NetScore:
    model_bits: int
    payload_bits: int

    def __post_init__(self):
        if self.model_bits < 0 or self.payload_bits < 0:
            raise ValueError("score components must be nonnegative")
        if self.model_bits + self.payload_bits > SCORE_CAP:
            raise OverflowError("net score exceeds cap")

    @property
    def total(self) -> int:
        return self.model_bits + self.payload_bits


def score_two_part(model_bits: int, payload_bits: int) -> NetScore:
    return NetScore(int(model_bits), int(payload_bits))


def compare_champion(incumbent: NetScore, challenger: NetScore) -> int:
    """Return 0 if the incumbent stays champion, 1 if the challenger takes over.

    Strictly smaller total wins; ties go to the smaller model header
    (Occam preference); a full tie keeps the incumbent.
    """
    if challenger.total != incumbent.total:
        return 1 if challenger.total < incumbent.total else 0
    if challenger.model_bits != incumbent.model_bits:
        return 1 if challenger.model_bits < incumbent.model_bits else 0
    return 0


class ProbModel:
    """Base class for registered models.

    Subclasses must reconstruct exactly from their header: deserialization
    followed by encoding must produce the identical payload.
    """

    model_id: str = ""
    kind: str = "bytes"

    def header_bytes(self) -> bytes:
        raise NotImplementedError

    @classmethod
    def from_header(cls, header: bytes) -> "ProbModel":
        raise NotImplementedError

    def encode_payload(self, raw: bytes) -> BitString:
        raise NotImplementedError

    def decode_payload(self, bits: BitString, original_length: int) -> bytes:
        raise NotImplementedError


class SequentialModel(ProbModel):
    """Model that codes a symbol stream with a per-step table source.

    Subclasses define the byte<->symbol mapping and the table source; the
    encode/decode/sample plumbing is shared.
    """

    def symbolize(self, raw: bytes) -> list[int]:
        raise NotImplementedError

    def desymbolize(self, symbols: list[int]) -> bytes:
        raise NotImplementedError

    def n_symbols_for_length(self, n_bytes: int) -> int:
        raise NotImplementedError

    def table_source(self) -> TableSource:
        raise NotImplementedError

    def encode_payload(self, raw: bytes) -> BitString:
        return arith_encode(self.symbolize(raw), self.table_source())

    def decode_payload(self, bits: BitString, original_length: int) -> bytes:
        n = self.n_symbols_for_length(original_length)
        return self.desymbolize(arith_decode(bits, self.table_source(), n))

    def realized_bits(self, raw: bytes) -> float:
        """Ideal codelength sum(-log2 f/total) along the coding path."""
        source = self.table_source()
        total = 0.0
        for i, s in enumerate(self.symbolize(raw)):
            table = source.next_table()
            f = table.freq(s)
            if f == 0:
                raise ValueError(f"zero-probability symbol at position {i}")
            total -= math.log2(f / table.total)
            source.advance(s)
        return total


def sample_from_model(model: SequentialModel, random_bits: BitString, n_symbols: int) -> list[int]:
    """Veridical simulation: decode random bits into a symbol sequence."""
    return arith_decode(random_bits, model.table_source(), n_symbols)


def nfl_average_codelength(model: SequentialModel, n_bits: int) -> float:
    """Exhaustive mean encoded length of all 2^n fixed-length bit strings.

    No model can push this mean below n bits; the assertion is part of the
    contract, not just the tests.
    """
    if not 1 <= n_bits <= 16:
        raise ValueError("n_bits must be in 1..16 (exhaustive-cost guard)")
    total_len = 0
    for value in range(1 << n_bits):
        seq = [(value >> (n_bits - 1 - i)) & 1 for i in range(n_bits)]
        total_len += arith_encode(seq, model.table_source()).length_bits
    mean = total_len / (1 << n_bits)
    if mean < n_bits:
        raise AssertionError(f"no-free-lunch violation: mean {mean} < {n_bits}")
    return mean


def virtual_label(window: bytes, default_model: SequentialModel,
                  specialized_model: SequentialModel) -> float:
    """Codelength saving of the specialist over the default, in bits.

    Positive means the specialized model describes the window better; the
    value can serve as a machine-generated training signal.
    """
    return default_model.realized_bits(window) - specialized_model.realized_bits(window)
