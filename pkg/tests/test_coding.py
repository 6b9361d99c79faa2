"""Bit I/O, information measures, and the arithmetic coder."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crmbench.coding import (
    MAX_TOTAL,
    QUANT_TOTAL,
    AdaptiveCountsSource,
    ArithDecoder,
    ArithEncoder,
    BitReader,
    BitString,
    BitWriter,
    CumulativeTable,
    StaticSource,
    SymbolDistribution,
    arith_decode,
    arith_encode,
    cross_entropy,
    entropy,
    kl_divergence,
    kraft_sum,
    quantize_distribution,
    realized_codelength,
    shannon_codelength,
)

from conftest import random_bits


class TestBitIO:
    def test_writer_reader_roundtrip(self):
        w = BitWriter()
        w.write_bits(0b1011, 4)
        w.write_bit(1)
        w.write_bits(0, 3)
        bits = w.getvalue()
        assert bits.length_bits == 8
        r = BitReader(bits)
        assert r.read_bits(4) == 0b1011
        assert r.read_bit() == 1
        assert r.read_bits(3) == 0

    def test_reader_zero_extends(self):
        r = BitReader(BitString(b"\xff", 8))
        assert r.read_bits(8) == 0xFF
        assert r.read_bits(16) == 0

    @given(st.lists(st.integers(0, 1), max_size=200))
    def test_bit_by_bit_identity(self, bits):
        w = BitWriter()
        for b in bits:
            w.write_bit(b)
        out = w.getvalue()
        assert out.length_bits == len(bits)
        r = BitReader(out)
        assert [r.read_bit() for _ in bits] == bits

    @given(st.integers(0, 2**40 - 1))
    def test_gamma_roundtrip(self, v):
        w = BitWriter()
        w.write_unary_gamma(v)
        assert BitReader(w.getvalue()).read_unary_gamma() == v

    def test_gamma_guard_on_zero_stream(self):
        with pytest.raises(ValueError):
            BitReader(BitString(b"", 0)).read_unary_gamma()


class TestInfoMeasures:
    def test_shannon_codelength(self):
        assert shannon_codelength(0.25) == pytest.approx(2.0)
        assert shannon_codelength(0.5, unit="nats") == pytest.approx(math.log(2))

    def test_dna_code_is_shannon_optimal(self):
        # lengths (1, 2, 3, 3) realize -log2 p for this distribution exactly
        probs = (0.5, 0.25, 0.125, 0.125)
        lengths = [shannon_codelength(p) for p in probs]
        assert lengths == [1.0, 2.0, 3.0, 3.0]
        assert kraft_sum(lengths) == pytest.approx(1.0)
        d = SymbolDistribution(probs)
        assert entropy(d) == pytest.approx(1.75)

    def test_cross_entropy_decomposition(self, rng):
        p = SymbolDistribution(np.ravel(rng.dirichlet(np.ones(6))))
        q = SymbolDistribution(np.ravel(rng.dirichlet(np.ones(6))))
        assert cross_entropy(p, q) == pytest.approx(
            entropy(p) + kl_divergence(p, q))
        assert kl_divergence(p, q) >= 0.0
        assert kl_divergence(p, p) == pytest.approx(0.0, abs=1e-12)

    def test_support_violation_names_symbol(self):
        p = SymbolDistribution((0.5, 0.5))
        q = SymbolDistribution((1.0, 0.0))
        with pytest.raises(ValueError, match="symbol 1"):
            cross_entropy(p, q)

    def test_realized_codelength_matches_sum(self):
        data = [0, 1, 0, 0]
        probs = {0: 0.75, 1: 0.25}
        got = realized_codelength(data, probs.__getitem__)
        assert got == pytest.approx(sum(-math.log2(probs[x]) for x in data))


class TestQuantization:
    @given(st.lists(st.floats(1e-6, 1.0), min_size=2, max_size=40))
    @settings(max_examples=200)
    def test_quantize_preserves_support_and_total(self, weights):
        probs = np.array(weights) / sum(weights)
        table = quantize_distribution(probs)
        freqs = np.diff(table.cum)
        assert table.total == QUANT_TOTAL
        assert (freqs >= 1).all()
        assert freqs.sum() == QUANT_TOTAL

    def test_quantize_total_cap(self):
        with pytest.raises(ValueError):
            quantize_distribution([0.5, 0.5], total=MAX_TOTAL + 1)

    def test_quantize_tracks_probabilities(self):
        table = quantize_distribution([0.5, 0.25, 0.25])
        freqs = np.diff(table.cum)
        assert freqs[0] == QUANT_TOTAL // 2
        assert freqs[1] == freqs[2] == QUANT_TOTAL // 4


def _static_table(rng, n_symbols):
    probs = rng.dirichlet(np.ones(n_symbols) * 0.5)
    probs = np.maximum(probs, 1e-6)
    return quantize_distribution(probs / probs.sum())


class TestArithCoder:
    def test_empty_stream(self):
        table = CumulativeTable([1, 1])
        bits = arith_encode([], StaticSource(table))
        assert bits.length_bits == 2
        assert arith_decode(bits, StaticSource(table), 0) == []

    def test_static_roundtrip_and_slack(self, rng):
        for _ in range(300):
            n_symbols = int(rng.integers(2, 9))
            table = _static_table(rng, n_symbols)
            n = int(rng.integers(0, 120))
            freqs = np.diff(table.cum)
            symbols = rng.choice(n_symbols, size=n, p=freqs / table.total).tolist()
            bits = arith_encode(symbols, StaticSource(table))
            assert arith_decode(bits, StaticSource(table), n) == symbols
            realized = float(-np.log2(freqs[symbols] / table.total).sum())
            slack = bits.length_bits - realized
            assert 0.0 <= slack <= 2.0 + 0.02 * n

    def test_adaptive_roundtrip(self, rng):
        for _ in range(50):
            n = int(rng.integers(0, 400))
            symbols = rng.integers(0, 5, size=n).tolist()
            bits = arith_encode(symbols, AdaptiveCountsSource(5))
            assert arith_decode(bits, AdaptiveCountsSource(5), n) == symbols

    def test_adaptive_learns_skew(self):
        symbols = [0] * 900 + [1] * 100
        bits = arith_encode(symbols, AdaptiveCountsSource(2))
        # H(0.1) is about 0.469 bits/symbol; adaptation should get close
        assert bits.length_bits < 0.6 * len(symbols)

    def test_decode_is_total_on_random_bits(self, rng):
        # sampling mode: any bit string decodes to some symbol sequence
        table = _static_table(rng, 6)
        for seed in range(20):
            bits = random_bits(seed, 256)
            out = arith_decode(bits, StaticSource(table), 50)
            assert len(out) == 50
            assert all(0 <= s < 6 for s in out)

    def test_encode_rejects_out_of_range(self):
        table = CumulativeTable([1, 1])
        with pytest.raises(ValueError, match="position 1"):
            arith_encode([0, 2], StaticSource(table))

    def test_known_symbols_cost_little(self):
        table = quantize_distribution([0.999, 0.001])
        bits = arith_encode([0] * 1000, StaticSource(table))
        assert bits.length_bits < 20


@given(st.data())
@settings(max_examples=150, deadline=None)
def test_property_static_roundtrip(data):
    n_symbols = data.draw(st.integers(2, 10))
    weights = data.draw(st.lists(st.integers(1, 1000),
                                 min_size=n_symbols, max_size=n_symbols))
    table = CumulativeTable(weights)
    symbols = data.draw(st.lists(st.integers(0, n_symbols - 1), max_size=150))
    bits = arith_encode(symbols, StaticSource(table))
    assert arith_decode(bits, StaticSource(table), len(symbols)) == symbols
