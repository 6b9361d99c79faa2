"""Registry behavior: registration, runs, ranking, sampling, reporting."""

import json

import numpy as np
import pytest

from crmbench.bench import (
    Registry,
    RegistryError,
    int_lines_bytes,
    natural_pgm_bytes,
    validate_dataset,
    wordlist_bytes,
)
from crmbench.models import compare_champion, score_two_part
from crmbench.numeric import sample_geometric


@pytest.fixture
def reg(tmp_path):
    return Registry(tmp_path / "crm")


@pytest.fixture
def words_file(tmp_path):
    path = tmp_path / "words.txt"
    path.write_bytes(wordlist_bytes())
    return path


@pytest.fixture
def ints_file(tmp_path):
    path = tmp_path / "geo.txt"
    path.write_bytes(int_lines_bytes(sample_geometric(2.0, 1200, 3)))
    return path


class TestValidation:
    def test_text_rejects_bad_byte(self):
        with pytest.raises(RegistryError, match="offset 2"):
            validate_dataset(b"ab!cd\n", "text")

    def test_text_rejects_blank_line(self):
        with pytest.raises(RegistryError, match="empty word"):
            validate_dataset(b"cat\n\ndog\n", "text")

    def test_text_requires_trailing_newline(self):
        with pytest.raises(RegistryError, match="trailing newline"):
            validate_dataset(b"cat", "text")

    def test_integers_reject_negatives_and_junk(self):
        with pytest.raises(RegistryError, match="line 2"):
            validate_dataset(b"3\n-1\n", "integers")
        with pytest.raises(RegistryError, match="line 1"):
            validate_dataset(b"zebra\n", "integers")

    def test_reals_parse(self):
        validate_dataset(b"1.5\n-2.25\n", "reals")

    def test_unknown_kind(self):
        with pytest.raises(RegistryError, match="unknown kind"):
            validate_dataset(b"", "tarot")

    def test_image_kind(self):
        validate_dataset(natural_pgm_bytes(), "image")
        with pytest.raises(RegistryError):
            validate_dataset(b"P5 nonsense", "image")

    def test_bitstrings_accept_anything(self):
        validate_dataset(bytes(range(256)), "bitstrings")


class TestRegisterDataset:
    def test_register_and_idempotence(self, reg, words_file):
        first = reg.register_dataset(words_file, "text")
        second = reg.register_dataset(words_file, "text")
        assert first == second
        assert first["kind"] == "text"
        assert len(first["checksum"]) == 64

    def test_modified_content_refused(self, reg, words_file):
        reg.register_dataset(words_file, "text")
        words_file.write_bytes(b"changed\n")
        with pytest.raises(RegistryError, match="checksum"):
            reg.register_dataset(words_file, "text")

    def test_missing_file(self, reg, tmp_path):
        with pytest.raises(RegistryError, match="no such file"):
            reg.register_dataset(tmp_path / "ghost.txt", "text")

    def test_stale_dataset_refused_at_run_time(self, reg, words_file):
        reg.register_dataset(words_file, "text")
        words_file.write_bytes(b"mutated\n")
        with pytest.raises(RegistryError, match="changed on disk"):
            reg.run("words", "letter-1gram")

    def test_persisted_across_instances(self, reg, words_file):
        reg.register_dataset(words_file, "text")
        again = Registry(reg.home)
        assert "words" in again.state["datasets"]


class TestRun:
    def test_run_reports_verified_score(self, reg, words_file):
        reg.register_dataset(words_file, "text")
        rep = reg.run("words", "letter-enhanced", seed=1)
        assert rep["verified"]
        assert rep["total_bits"] == rep["model_bits"] + rep["payload_bits"]
        assert rep["total_bits"] > 0
        assert rep["seed"] == 1

    def test_unregistered_model_refused(self, reg, words_file):
        reg.register_dataset(words_file, "text")
        with pytest.raises(RegistryError, match="unknown model"):
            reg.run("words", "gzip")

    def test_kind_mismatch_refused(self, reg, words_file):
        reg.register_dataset(words_file, "text")
        with pytest.raises(RegistryError, match="kind"):
            reg.run("words", "delta-image")

    def test_container_stored_and_loadable(self, reg, ints_file):
        reg.register_dataset(ints_file, "integers")
        reg.run("geo", "geometric-online")
        c = reg.container_for("geo", "geometric-online")
        assert c.model_id == "geometric-online"
        assert c.original_length == ints_file.stat().st_size

    def test_model_bits_include_program_constant(self, reg, ints_file):
        reg.register_dataset(ints_file, "integers")
        rep = reg.run("geo", "geometric-header")
        # 8-byte rate header plus the declared program constant
        assert rep["model_bits"] == 8 * 8 + reg.program_bits_constant("geometric-header")

    def test_rerun_is_deterministic(self, reg, ints_file):
        reg.register_dataset(ints_file, "integers")
        first = reg.run("geo", "family-select")
        blob1 = (reg.container_dir / "geo__family-select__0.crmc").read_bytes()
        second = reg.run("geo", "family-select")
        blob2 = (reg.container_dir / "geo__family-select__0.crmc").read_bytes()
        assert first == second
        assert blob1 == blob2


class TestLeaderboard:
    def test_orders_by_champion_rule(self, reg, ints_file):
        reg.register_dataset(ints_file, "integers")
        for model in ("geometric-fixed", "geometric-header",
                      "geometric-online", "family-select"):
            reg.run("geo", model)
        rows = reg.leaderboard("geo")
        assert len(rows) == 4
        for a, b in zip(rows, rows[1:]):
            inc = score_two_part(a["model_bits"], a["payload_bits"])
            ch = score_two_part(b["model_bits"], b["payload_bits"])
            assert compare_champion(inc, ch) == 0

    def test_unverified_results_excluded(self, reg, ints_file):
        reg.register_dataset(ints_file, "integers")
        rep = reg.run("geo", "geometric-online")
        forged = dict(rep, model="corrupted", verified=False)
        reg.state["results"]["geo::corrupted::0"] = forged
        rows = reg.leaderboard("geo")
        assert all(r["model"] != "corrupted" for r in rows)

    def test_unknown_dataset(self, reg):
        with pytest.raises(RegistryError, match="unknown dataset"):
            reg.leaderboard("nope")

    def test_empty_board(self, reg, words_file):
        reg.register_dataset(words_file, "text")
        assert reg.leaderboard("words") == []


class TestSampling:
    def test_text_sampling_deterministic(self, reg):
        a = reg.sample("letter-enhanced", 10, seed=4)
        b = reg.sample("letter-enhanced", 10, seed=4)
        assert a == b
        assert len(a.strip().split("\n")) == 10

    def test_seed_changes_output(self, reg):
        assert reg.sample("letter-enhanced", 10, 1) != \
            reg.sample("letter-enhanced", 10, 2)

    def test_count_zero(self, reg):
        assert reg.sample("uniform-bit", 0, 0) == ""

    def test_bit_model_output_shape(self, reg):
        out = reg.sample("adaptive-bit", 5, 3)
        lines = out.strip().split("\n")
        assert len(lines) == 5
        assert all(set(line) <= {"0", "1"} and len(line) == 8 for line in lines)

    def test_non_sampleable_refused(self, reg):
        with pytest.raises(RegistryError, match="not sampleable"):
            reg.sample("interp-triple", 1, 0)


class TestReport:
    def test_json_round_trips(self, reg, ints_file):
        reg.register_dataset(ints_file, "integers")
        reg.run("geo", "geometric-online")
        data = json.loads(reg.report("json"))
        assert data["results"][0]["model"] == "geometric-online"
        required = {"dataset", "model", "seed", "model_bits", "payload_bits",
                    "total_bits", "verified", "wall_time", "version"}
        assert required <= set(data["results"][0])

    def test_table_matches_json_totals(self, reg, ints_file):
        reg.register_dataset(ints_file, "integers")
        reg.run("geo", "geometric-fixed")
        data = json.loads(reg.report("json"))
        table = reg.report("table")
        for r in data["results"]:
            assert str(r["total_bits"]) in table

    def test_empty_state_is_valid(self, reg):
        data = json.loads(reg.report("json"))
        assert data["results"] == []
        assert "no results" in reg.report("table")

    def test_unknown_format(self, reg):
        with pytest.raises(RegistryError):
            reg.report("xml")
