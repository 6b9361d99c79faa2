"""Character n-gram models over the 27-letter alphabet.

`order` is the context length: order 1 conditions on the previous letter
(a classic bigram), order 2 on the previous two. Smoothing is a fixed
recursive interpolation down to an add-alpha unigram base, so every
emitted probability is strictly positive and no tuning loop is needed.

Each word is coded independently: letters followed by the word-end marker,
with the context never crossing a word boundary.
"""

from __future__ import annotations

import struct

import numpy as np

from ..coding import CumulativeTable, TableSource, quantize_distribution
from ..models import SequentialModel
from ..util import read_uvarint, write_uvarint
from .alphabet import (
    ALPHABET_SIZE,
    VOWEL_INDICES,
    WORD_END,
    normalize_to_words,
    word_to_symbols,
)

DEFAULT_WEIGHT = 0.9
DEFAULT_ALPHA = 0.5

NEWLINE = ord("\n")


class NgramModel(SequentialModel):
    kind = "text"

    def __init__(self, order: int, level_counts: list[dict], weight: float = DEFAULT_WEIGHT,
                 alpha: float = DEFAULT_ALPHA, model_id: str | None = None):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.order = order
        # level_counts[k]: context tuple of k letters -> count vector (27,)
        self.level_counts = level_counts
        self.weight = weight
        self.alpha = alpha
        self.model_id = model_id or f"letter-{order}gram"
        self._dist_cache: dict = {}
        self._table_cache: dict = {}

    # -- probabilities ----------------------------------------------------

    def _base(self) -> np.ndarray:
        c = self.level_counts[0].get((), np.zeros(ALPHABET_SIZE))
        return (c + self.alpha) / (c.sum() + ALPHABET_SIZE * self.alpha)

    def _interp(self, ctx: tuple) -> np.ndarray:
        if not ctx:
            return self._base()
        lower = self._interp(ctx[1:])
        c = self.level_counts[len(ctx)].get(ctx)
        if c is None:
            return lower
        total = c.sum()
        if total == 0:
            return lower
        return self.weight * (c / total) + (1.0 - self.weight) * lower

    def distribution(self, context) -> np.ndarray:
        """Next-symbol probabilities given the letters so far in this word."""
        ctx = tuple(context[-self.order:]) if context else ()
        cached = self._dist_cache.get(ctx)
        if cached is None:
            cached = self._interp(ctx)
            self._dist_cache[ctx] = cached
        return cached

    def quantized_table(self, context) -> CumulativeTable:
        ctx = tuple(context[-self.order:]) if context else ()
        t = self._table_cache.get(ctx)
        if t is None:
            t = quantize_distribution(self.distribution(ctx))
            self._table_cache[ctx] = t
        return t

    # -- codelength -------------------------------------------------------

    def word_bits(self, word: str) -> float:
        bits = 0.0
        context: list[int] = []
        for s in word_to_symbols(word):
            p = self.distribution(context)[s]
            bits -= float(np.log2(p))
            if s != WORD_END:
                context.append(s)
        return bits

    def text_bits(self, text: str) -> float:
        return sum(self.word_bits(w) for w in normalize_to_words(text))

    # -- sequential-model plumbing ---------------------------------------

    def symbolize(self, raw: bytes) -> list[int]:
        out = []
        for off, b in enumerate(raw):
            if b == NEWLINE:
                out.append(WORD_END)
            elif ord("a") <= b <= ord("z"):
                out.append(b - ord("a"))
            else:
                raise ValueError(f"unnormalizable byte 0x{b:02x} at offset {off}")
        return out

    def desymbolize(self, symbols: list[int]) -> bytes:
        return bytes(NEWLINE if s == WORD_END else ord("a") + s for s in symbols)

    def n_symbols_for_length(self, n_bytes: int) -> int:
        return n_bytes

    def table_source(self) -> TableSource:
        return _WordContextSource(self)

    # -- serialization ----------------------------------------------------

    def header_bytes(self) -> bytes:
        buf = bytearray()
        buf += struct.pack("<BB", 0, self.order)  # tag 0 = plain n-gram
        buf += struct.pack("<dd", self.weight, self.alpha)
        for k in range(self.order + 1):
            level = self.level_counts[k] if k < len(self.level_counts) else {}
            write_uvarint(buf, len(level))
            for ctx in sorted(level):
                buf += bytes(ctx)
                for c in level[ctx]:
                    write_uvarint(buf, int(c))
        return bytes(buf)

    @classmethod
    def from_header(cls, header: bytes) -> "NgramModel":
        tag, order = struct.unpack_from("<BB", header, 0)
        if tag != 0:
            raise ValueError(f"bad n-gram header tag {tag}")
        weight, alpha = struct.unpack_from("<dd", header, 2)
        off = 2 + 16
        levels: list[dict] = []
        for k in range(order + 1):
            n, off = read_uvarint(header, off)
            level = {}
            for _ in range(n):
                ctx = tuple(header[off:off + k])
                off += k
                counts = np.zeros(ALPHABET_SIZE)
                for j in range(ALPHABET_SIZE):
                    counts[j], off = read_uvarint(header, off)
                level[ctx] = counts
            levels.append(level)
        return cls(order, levels, weight, alpha)


class _WordContextSource(TableSource):
    """Table source replaying word-local context for encode/decode/sample."""

    def __init__(self, model):
        self._model = model
        self._context: list[int] = []

    def next_table(self) -> CumulativeTable:
        return self._model.quantized_table(self._context)

    def advance(self, symbol: int) -> None:
        if symbol == WORD_END:
            self._context = []
        else:
            self._context.append(symbol)


def train_ngram(corpus: str, order: int, weight: float = DEFAULT_WEIGHT,
                alpha: float = DEFAULT_ALPHA, model_id: str | None = None) -> NgramModel:
    """Count-based estimation of all context levels up to `order`."""
    if order < 1:
        raise ValueError("order must be >= 1")
    words = normalize_to_words(corpus)
    if not words:
        raise ValueError("corpus is empty after normalization")
    levels: list[dict] = [dict() for _ in range(order + 1)]
    for word in words:
        symbols = word_to_symbols(word)
        letters = symbols[:-1]
        for i, s in enumerate(symbols):
            for k in range(order + 1):
                if i >= k:
                    ctx = tuple(letters[i - k:i])
                    vec = levels[k].get(ctx)
                    if vec is None:
                        vec = np.zeros(ALPHABET_SIZE)
                        levels[k][ctx] = vec
                    vec[s] += 1
    return NgramModel(order, levels, weight, alpha, model_id)


class EnhancedLetterModel(SequentialModel):
    """Order-2 letter model with word-structure refinements.

    Two refinements over the plain n-gram: the first letter of a word gets
    its own separately trained distribution, and the word-end marker is
    impossible until at least one vowel has appeared (mass renormalized
    over the remaining symbols). Every sampled word therefore contains a
    vowel.
    """

    kind = "text"
    model_id = "letter-enhanced"

    def __init__(self, base: NgramModel, first_counts: np.ndarray,
                 alpha: float = DEFAULT_ALPHA):
        self.base = base
        self.first_counts = np.asarray(first_counts, dtype=float)
        self.alpha = alpha
        self._table_cache: dict = {}

    def distribution(self, context) -> np.ndarray:
        if not context:
            p = (self.first_counts + self.alpha)
            p = p / p.sum()
        else:
            p = self.base.distribution(context).copy()
        if not any(s in VOWEL_INDICES for s in context):
            p[WORD_END] = 0.0
            p = p / p.sum()
        return p

    def quantized_table(self, context) -> CumulativeTable:
        key = (tuple(context[-self.base.order:]) if context else (),
               any(s in VOWEL_INDICES for s in context))
        t = self._table_cache.get(key)
        if t is None:
            t = quantize_distribution(self.distribution(context))
            self._table_cache[key] = t
        return t

    def word_bits(self, word: str) -> float:
        bits = 0.0
        context: list[int] = []
        for s in word_to_symbols(word):
            p = self.distribution(context)[s]
            if p <= 0:
                raise ValueError(f"word {word!r} impossible under model (no vowel)")
            bits -= float(np.log2(p))
            if s != WORD_END:
                context.append(s)
        return bits

    def text_bits(self, text: str) -> float:
        return sum(self.word_bits(w) for w in normalize_to_words(text))

    symbolize = NgramModel.symbolize
    desymbolize = NgramModel.desymbolize
    n_symbols_for_length = NgramModel.n_symbols_for_length

    def table_source(self) -> TableSource:
        return _WordContextSource(self)

    def header_bytes(self) -> bytes:
        buf = bytearray()
        buf += struct.pack("<B", 1)  # tag 1 = enhanced
        inner = self.base.header_bytes()
        write_uvarint(buf, len(inner))
        buf += inner
        for c in self.first_counts:
            write_uvarint(buf, int(c))
        return bytes(buf)

    @classmethod
    def from_header(cls, header: bytes) -> "EnhancedLetterModel":
        if header[0] != 1:
            raise ValueError("bad enhanced-model header tag")
        inner_len, off = read_uvarint(header, 1)
        base = NgramModel.from_header(header[off:off + inner_len])
        off += inner_len
        counts = np.zeros(ALPHABET_SIZE)
        for j in range(ALPHABET_SIZE):
            counts[j], off = read_uvarint(header, off)
        return cls(base, counts)


def train_enhanced(corpus: str, order: int = 2) -> EnhancedLetterModel:
    base = train_ngram(corpus, order)
    first = np.zeros(ALPHABET_SIZE)
    for word in normalize_to_words(corpus):
        first[word_to_symbols(word)[0]] += 1
    return EnhancedLetterModel(base, first)


def model_codelength(model, text: str) -> float:
    """Realized codelength of normalized text under a letter model, in bits."""
    return model.text_bits(text)


def sample_words(model, random_bits, count: int) -> list[str]:
    """Draw words by decoding random bits; deterministic in (model, bits)."""
    from ..coding import ArithDecoder
    from .alphabet import index_to_letter

    if count < 0:
        raise ValueError("count must be nonnegative")
    if count == 0:
        return []
    source = model.table_source()
    dec = ArithDecoder(random_bits)
    words: list[str] = []
    current: list[str] = []
    guard = 1000 * count + 10000
    while len(words) < count:
        guard -= 1
        if guard <= 0:
            raise RuntimeError("sampling failed to terminate words")
        s = dec.decode_symbol(source.next_table())
        source.advance(s)
        if s == WORD_END:
            words.append("".join(current))
            current = []
        else:
            current.append(index_to_letter(s))
    return words
