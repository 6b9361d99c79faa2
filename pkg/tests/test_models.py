"""Scores, champion comparison, containers, and round-trip verification."""

import hashlib

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crmbench.bench import UniformBitModel, resolve_model
from crmbench.coding import BitString
from crmbench.models import (
    EncodedContainer,
    NetScore,
    checksum256,
    compare_champion,
    decode_container,
    encode_container,
    nfl_average_codelength,
    score_two_part,
    verify_roundtrip,
    virtual_label,
)
from crmbench.models.container import ContainerError
from crmbench.text import train_ngram


class TestNetScore:
    def test_total(self):
        assert score_two_part(10, 90).total == 100

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            NetScore(-1, 0)

    def test_overflow_cap(self):
        with pytest.raises(OverflowError):
            NetScore(2**63, 2**63)

    @given(st.integers(0, 10**12), st.integers(0, 10**12),
           st.integers(0, 10**12), st.integers(0, 10**12))
    @settings(deadline=None)
    def test_champion_is_total_then_occam(self, m1, p1, m2, p2):
        inc, ch = NetScore(m1, p1), NetScore(m2, p2)
        won = compare_champion(inc, ch)
        if ch.total < inc.total:
            assert won == 1
        elif ch.total > inc.total:
            assert won == 0
        elif ch.model_bits < inc.model_bits:
            assert won == 1
        else:
            assert won == 0

    def test_full_tie_keeps_incumbent(self):
        assert compare_champion(NetScore(5, 5), NetScore(5, 5)) == 0


class TestContainer:
    def _container(self, raw=b"hello container"):
        return encode_container(UniformBitModel(), raw), raw

    def test_roundtrip_bytes(self):
        c, _ = self._container()
        again = EncodedContainer.from_bytes(c.to_bytes())
        assert again == c

    def test_decode_restores_original(self):
        c, raw = self._container()
        assert decode_container(c, resolve_model) == raw

    def test_verify_report_ok(self):
        c, raw = self._container()
        rep = verify_roundtrip(raw, c, resolve_model)
        assert rep.ok
        assert rep.byte_length == len(raw)
        assert rep.first_mismatch_offset is None
        assert rep.decoded_checksum == hashlib.sha256(raw).digest()

    def test_verify_flags_mismatch_offset(self):
        c, raw = self._container()
        tampered = EncodedContainer(
            model_id=c.model_id, model_header=c.model_header,
            original_length=c.original_length, payload=c.payload,
            checksum=checksum256(b"x" + raw[1:]))
        rep = verify_roundtrip(b"x" + raw[1:], tampered, resolve_model)
        assert not rep.ok
        assert rep.first_mismatch_offset == 0

    def test_bad_magic_rejected(self):
        c, _ = self._container()
        blob = bytearray(c.to_bytes())
        blob[0] ^= 0xFF
        with pytest.raises(ContainerError):
            EncodedContainer.from_bytes(bytes(blob))

    def test_truncated_blob_rejected(self):
        c, _ = self._container()
        blob = c.to_bytes()
        for cut in (4, len(blob) // 2, len(blob) - 1):
            with pytest.raises(ContainerError):
                EncodedContainer.from_bytes(blob[:cut])

    @given(st.binary(max_size=64))
    @settings(deadline=None)
    def test_fuzzed_roundtrip(self, raw):
        c = encode_container(UniformBitModel(), raw)
        assert verify_roundtrip(raw, c, resolve_model).ok
        assert EncodedContainer.from_bytes(c.to_bytes()) == c

    def test_unknown_model_refused(self):
        c, _ = self._container()
        bogus = EncodedContainer(
            model_id="no-such-model", model_header=b"",
            original_length=c.original_length, payload=c.payload,
            checksum=c.checksum)
        with pytest.raises(KeyError):
            decode_container(bogus, resolve_model)


class TestNfl:
    def test_uniform_model_is_exactly_lossless_neutral(self):
        mean = nfl_average_codelength(UniformBitModel(), 8)
        assert 8.0 <= mean <= 10.5

    def test_size_guard(self):
        with pytest.raises(ValueError):
            nfl_average_codelength(UniformBitModel(), 17)


class TestVirtualLabel:
    def test_specialist_wins_on_matching_text(self):
        english = train_ngram("the quick brown fox jumps over the lazy dog "
                              "pack my box with five dozen liquor jugs", 1)
        flat = train_ngram("zq xj", 1)
        window = b"the\nfrozen\njugs\n"
        label = virtual_label(window, flat, english)
        assert label > 0

    def test_antisymmetry(self):
        a = train_ngram("aaaa aaab", 1)
        b = train_ngram("bbbb bbba", 1)
        w = b"aaab\n"
        assert virtual_label(w, a, b) == pytest.approx(-virtual_label(w, b, a))
