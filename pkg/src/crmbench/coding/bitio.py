"""Bit-level I/O: BitString container plus writer/reader streams.

Bit order is big-endian within each byte. Trailing pad bits of the last
byte are not part of the logical bit string; length_bits is authoritative.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class BitString:
    data: bytes
    length_bits: int

    def __post_init__(self):
        if self.length_bits < 0:
            raise ValueError("length_bits must be nonnegative")
        if len(self.data) != (self.length_bits + 7) // 8:
            raise ValueError("byte buffer does not match length_bits")

    def __len__(self) -> int:
        return self.length_bits

    def bit(self, i: int) -> int:
        if not 0 <= i < self.length_bits:
            raise IndexError(i)
        return (self.data[i >> 3] >> (7 - (i & 7))) & 1

    def bits(self):
        for i in range(self.length_bits):
            yield (self.data[i >> 3] >> (7 - (i & 7))) & 1

    @classmethod
    def from_bits(cls, bits) -> "BitString":
        w = BitWriter()
        for b in bits:
            w.write_bit(b)
        return w.getvalue()

    @classmethod
    def from_bytes(cls, data: bytes) -> "BitString":
        return cls(bytes(data), 8 * len(data))


class BitWriter:
    """Accumulates bits most-significant-first into a byte buffer."""

    def __init__(self):
        self._buf = bytearray()
        self._acc = 0
        self._nacc = 0

    def write_bit(self, bit: int):
        self._acc = (self._acc << 1) | (bit & 1)
        self._nacc += 1
        if self._nacc == 8:
            self._buf.append(self._acc)
            self._acc = 0
            self._nacc = 0

    def write_bits(self, value: int, n: int):
        for shift in range(n - 1, -1, -1):
            self.write_bit((value >> shift) & 1)

    def write_unary_gamma(self, value: int):
        """Elias gamma code for a nonnegative integer (coded as value+1)."""
        v = value + 1
        nbits = v.bit_length()
        for _ in range(nbits - 1):
            self.write_bit(0)
        self.write_bits(v, nbits)

    @property
    def length_bits(self) -> int:
        return 8 * len(self._buf) + self._nacc

    def getvalue(self) -> BitString:
        n = self.length_bits
        buf = bytes(self._buf)
        if self._nacc:
            buf += bytes([(self._acc << (8 - self._nacc)) & 0xFF])
        return BitString(buf, n)


class BitReader:
    """Reads bits from a BitString; reads past the end yield zeros.

    The zero-extension rule makes decoding a total function of arbitrary
    bit input, which is what lets a decoder double as a sampler.
    """

    def __init__(self, bits: BitString):
        self._bits = bits
        self.pos = 0

    def read_bit(self) -> int:
        if self.pos >= self._bits.length_bits:
            self.pos += 1
            return 0
        b = self._bits.bit(self.pos)
        self.pos += 1
        return b

    def read_bits(self, n: int) -> int:
        v = 0
        for _ in range(n):
            v = (v << 1) | self.read_bit()
        return v

    def read_unary_gamma(self) -> int:
        nzeros = 0
        while self.read_bit() == 0:
            nzeros += 1
            if nzeros > 64:
                raise ValueError("malformed gamma code")
        v = 1
        for _ in range(nzeros):
            v = (v << 1) | self.read_bit()
        return v - 1
