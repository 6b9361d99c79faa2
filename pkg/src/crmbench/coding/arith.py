"""Integer arithmetic coder (32-bit, 2-bit flush) over cumulative count tables.

The coder is the classic carry-free low/high formulation: 32 bits of state,
scaling by integer cumulative frequencies whose total never exceeds 2^16,
and a two-bit flush. Per-symbol overhead against the ideal -log2(f/total)
codelengths is bounded by the quantization of the range split, well under
the 0.02 bits/symbol budget the rest of the project assumes.

Decoding past the end of the bit string zero-extends, so any bit string
decodes to some symbol sequence. That turns every decoder into a sampler.
"""

from __future__ import annotations

import bisect
from typing import Iterable, Sequence

import numpy as np

from .bitio import BitReader, BitString, BitWriter

CODE_BITS = 32
TOP_VALUE = (1 << CODE_BITS) - 1
HALF = 1 << (CODE_BITS - 1)
QUARTER = 1 << (CODE_BITS - 2)
THREE_QUARTERS = HALF + QUARTER

MAX_TOTAL = 1 << 16
QUANT_TOTAL = 1 << 14


class CumulativeTable:
    """Integer frequencies for one coding step.

    cum[i] .. cum[i+1] is the frequency slice of symbol i; cum[-1] == total.
    """

    __slots__ = ("cum", "total", "n_symbols")

    def __init__(self, counts: Sequence[int]):
        cum = [0]
        running = 0
        for c in counts:
            if c < 0:
                raise ValueError("negative count")
            running += int(c)
            cum.append(running)
        if running <= 0:
            raise ValueError("table total must be positive")
        if running > MAX_TOTAL:
            raise ValueError(f"table total {running} exceeds coder bound {MAX_TOTAL}")
        self.cum = cum
        self.total = running
        self.n_symbols = len(cum) - 1

    def freq(self, symbol: int) -> int:
        return self.cum[symbol + 1] - self.cum[symbol]

    def find(self, scaled: int) -> int:
        # rightmost symbol with cum[symbol] <= scaled
        return bisect.bisect_right(self.cum, scaled) - 1


def quantize_distribution(probs, total: int = QUANT_TOTAL) -> CumulativeTable:
    """Round a probability vector to integer counts summing to `total`.

    Every strictly positive probability keeps a count of at least 1, so a
    realizable symbol can never hit a zero-frequency encode failure.
    """
    p = np.asarray(probs, dtype=float)
    if p.ndim != 1 or p.size == 0:
        raise ValueError("need a nonempty probability vector")
    if p.size > total:
        raise ValueError("alphabet larger than quantization budget")
    raw = p * total
    counts = np.floor(raw).astype(np.int64)
    nz = p > 0
    counts[nz & (counts == 0)] = 1
    diff = total - int(counts.sum())
    if diff > 0:
        frac = raw - np.floor(raw)
        frac[~nz] = -1.0
        order = np.argsort(-frac, kind="stable")
        k = int(nz.sum())
        for i in range(diff):
            counts[order[i % k]] += 1
    while diff < 0:
        j = int(np.argmax(counts))
        take = min(-diff, int(counts[j]) - 1)
        if take <= 0:
            raise ValueError("cannot quantize: too many mandatory unit counts")
        counts[j] -= take
        diff += take
    return CumulativeTable(counts.tolist())


class TableSource:
    """Per-step table supplier for adaptive coding.

    The decoder drives the same source with the same symbol stream, so the
    two sides stay synchronized by construction.
    """

    def next_table(self) -> CumulativeTable:
        raise NotImplementedError

    def advance(self, symbol: int) -> None:
        pass


class StaticSource(TableSource):
    def __init__(self, table: CumulativeTable):
        self._table = table

    def next_table(self) -> CumulativeTable:
        return self._table


class AdaptiveCountsSource(TableSource):
    """Order-0 adaptive model: all counts start at 1, bump on each symbol.

    Counts are halved when the total would exceed the coder bound.
    """

    def __init__(self, n_symbols: int, increment: int = 32):
        self._counts = [1] * n_symbols
        self._increment = increment

    def next_table(self) -> CumulativeTable:
        return CumulativeTable(self._counts)

    def advance(self, symbol: int) -> None:
        self._counts[symbol] += self._increment
        if sum(self._counts) + self._increment > MAX_TOTAL:
            self._counts = [(c + 1) // 2 for c in self._counts]


class ArithEncoder:
    def __init__(self, writer: BitWriter | None = None):
        self.writer = writer if writer is not None else BitWriter()
        self._low = 0
        self._high = TOP_VALUE
        self._pending = 0

    def _emit(self, bit: int):
        self.writer.write_bit(bit)
        inv = bit ^ 1
        for _ in range(self._pending):
            self.writer.write_bit(inv)
        self._pending = 0

    def encode_symbol(self, table: CumulativeTable, symbol: int):
        if not 0 <= symbol < table.n_symbols:
            raise ValueError(f"symbol {symbol} outside table alphabet")
        c_lo = table.cum[symbol]
        c_hi = table.cum[symbol + 1]
        if c_hi == c_lo:
            raise ValueError(f"zero-frequency symbol {symbol}")
        span = self._high - self._low + 1
        self._high = self._low + (span * c_hi) // table.total - 1
        self._low = self._low + (span * c_lo) // table.total
        while True:
            if self._high < HALF:
                self._emit(0)
            elif self._low >= HALF:
                self._emit(1)
                self._low -= HALF
                self._high -= HALF
            elif self._low >= QUARTER and self._high < THREE_QUARTERS:
                self._pending += 1
                self._low -= QUARTER
                self._high -= QUARTER
            else:
                break
            self._low <<= 1
            self._high = (self._high << 1) | 1

    def finish(self) -> BitString:
        self._pending += 1
        self._emit(0 if self._low < QUARTER else 1)
        return self.writer.getvalue()


class ArithDecoder:
    def __init__(self, bits: BitString | BitReader):
        self.reader = bits if isinstance(bits, BitReader) else BitReader(bits)
        self._low = 0
        self._high = TOP_VALUE
        self._value = self.reader.read_bits(CODE_BITS)

    def decode_symbol(self, table: CumulativeTable) -> int:
        span = self._high - self._low + 1
        scaled = ((self._value - self._low + 1) * table.total - 1) // span
        symbol = table.find(scaled)
        c_lo = table.cum[symbol]
        c_hi = table.cum[symbol + 1]
        self._high = self._low + (span * c_hi) // table.total - 1
        self._low = self._low + (span * c_lo) // table.total
        while True:
            if self._high < HALF:
                pass
            elif self._low >= HALF:
                self._low -= HALF
                self._high -= HALF
                self._value -= HALF
            elif self._low >= QUARTER and self._high < THREE_QUARTERS:
                self._low -= QUARTER
                self._high -= QUARTER
                self._value -= QUARTER
            else:
                break
            self._low <<= 1
            self._high = (self._high << 1) | 1
            self._value = (self._value << 1) | self.reader.read_bit()
        return symbol


def arith_encode(symbols: Iterable[int], source: TableSource) -> BitString:
    enc = ArithEncoder()
    for i, s in enumerate(symbols):
        table = source.next_table()
        try:
            enc.encode_symbol(table, s)
        except ValueError as e:
            raise ValueError(f"encode failed at position {i}: {e}") from e
        source.advance(s)
    return enc.finish()


def arith_decode(bits: BitString, source: TableSource, n_symbols: int) -> list[int]:
    dec = ArithDecoder(bits)
    out = []
    for _ in range(n_symbols):
        table = source.next_table()
        s = dec.decode_symbol(table)
        source.advance(s)
        out.append(s)
    return out
