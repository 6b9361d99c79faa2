"""On-disk benchmark registry: datasets, runs, leaderboard, sampling.

State lives under CRM_HOME (default `.crm/`) as a single human-diffable
`registry.json` plus the encoded containers for each run. No database.
"""

from __future__ import annotations

import hashlib
import json
import os
import time
from pathlib import Path

import numpy as np

from .. import __version__
from ..coding import BitString
from ..image import parse_pgm, parse_triple
from ..models import (
    encode_container,
    sample_from_model,
    score_two_part,
    verify_roundtrip,
)
from ..models.container import EncodedContainer
from ..text import sample_words
from .model_zoo import MODEL_SPECS, resolve_model

REGISTRY_VERSION = 1
DATASET_KINDS = ("text", "integers", "reals", "image", "frame-triple", "bitstrings")

# stand-in for the shared-runtime share of a model's program length;
# per-model overrides live in the registry config
DEFAULT_PROGRAM_BITS = 1024


class RegistryError(Exception):
    pass


def validate_dataset(raw: bytes, kind: str):
    """Check that raw bytes parse as the canonical form of the kind.

    Raises RegistryError naming the offending byte offset or line.
    """
    if kind not in DATASET_KINDS:
        raise RegistryError(f"unknown kind {kind!r} (choose from {DATASET_KINDS})")
    if kind == "bitstrings":
        return
    if kind == "text":
        # lowercase words, one per line, trailing newline, no blank lines
        prev = ord("\n")
        for off, b in enumerate(raw):
            if b == ord("\n"):
                if prev == ord("\n"):
                    raise RegistryError(f"text parse failure at offset {off}: empty word")
            elif not (ord("a") <= b <= ord("z")):
                raise RegistryError(
                    f"text parse failure at offset {off}: byte {b:#04x} not in a-z/newline")
            prev = b
        if raw and raw[-1] != ord("\n"):
            raise RegistryError(
                f"text parse failure at offset {len(raw) - 1}: missing trailing newline")
        return
    if kind in ("integers", "reals"):
        conv = int if kind == "integers" else float
        offset = 0
        for lineno, line in enumerate(raw.split(b"\n")[:-1], start=1):
            try:
                v = conv(line.decode("ascii").strip())
            except (UnicodeDecodeError, ValueError):
                raise RegistryError(
                    f"{kind} parse failure at offset {offset} (line {lineno})") from None
            if kind == "integers" and v < 0:
                raise RegistryError(
                    f"integers parse failure at offset {offset} (line {lineno}): negative")
            offset += len(line) + 1
        if raw and not raw.endswith(b"\n"):
            raise RegistryError(f"{kind} parse failure at offset {len(raw) - 1}: "
                                "missing trailing newline")
        return
    try:
        if kind == "image":
            _, end = parse_pgm(raw, 0)
            if end != len(raw):
                raise RegistryError(f"image parse failure at offset {end}: trailing bytes")
        else:
            parse_triple(raw)
    except RegistryError:
        raise
    except Exception as exc:
        raise RegistryError(f"{kind} parse failure: {exc}") from exc


def _checksum_hex(raw: bytes) -> str:
    return hashlib.sha256(raw).hexdigest()


def _random_bits(seed: int, n_bits: int) -> BitString:
    rng = np.random.default_rng(seed)
    n_bytes = (n_bits + 7) // 8
    return BitString(rng.integers(0, 256, n_bytes, dtype=np.uint8).tobytes(), n_bits)


class Registry:
    """Single-directory benchmark state with a JSON manifest."""

    def __init__(self, home: str | Path | None = None):
        if home is None:
            home = os.environ.get("CRM_HOME", ".crm")
        self.home = Path(home)
        self.manifest_path = self.home / "registry.json"
        self.container_dir = self.home / "containers"
        self.state = self._load()

    def _load(self) -> dict:
        if self.manifest_path.exists():
            state = json.loads(self.manifest_path.read_text())
            if state.get("version") != REGISTRY_VERSION:
                raise RegistryError(
                    f"registry version {state.get('version')} unsupported")
            return state
        return {
            "version": REGISTRY_VERSION,
            "config": {"default_program_bits": DEFAULT_PROGRAM_BITS,
                       "program_bits": {}},
            "datasets": {},
            "results": {},
        }

    def _save(self):
        self.home.mkdir(parents=True, exist_ok=True)
        self.manifest_path.write_text(
            json.dumps(self.state, indent=2, sort_keys=True) + "\n")

    def program_bits_constant(self, model_id: str) -> int:
        cfg = self.state["config"]
        return int(cfg["program_bits"].get(model_id, cfg["default_program_bits"]))

    # -- datasets ------------------------------------------------------------

    def register_dataset(self, path: str | Path, kind: str,
                         dataset_id: str | None = None) -> dict:
        path = Path(path)
        if not path.is_file():
            raise RegistryError(f"no such file: {path}")
        raw = path.read_bytes()
        validate_dataset(raw, kind)
        dataset_id = dataset_id or path.stem
        entry = {"id": dataset_id, "path": str(path.resolve()),
                 "checksum": _checksum_hex(raw), "kind": kind}
        existing = self.state["datasets"].get(dataset_id)
        if existing is not None:
            if existing["checksum"] != entry["checksum"]:
                raise RegistryError(
                    f"dataset {dataset_id!r} already registered with checksum "
                    f"{existing['checksum'][:12]}..., refusing "
                    f"{entry['checksum'][:12]}...")
            if existing["kind"] != kind:
                raise RegistryError(
                    f"dataset {dataset_id!r} already registered as kind "
                    f"{existing['kind']!r}")
            return existing
        self.state["datasets"][dataset_id] = entry
        self._save()
        return entry

    def _dataset_bytes(self, dataset_id: str) -> tuple[dict, bytes]:
        entry = self.state["datasets"].get(dataset_id)
        if entry is None:
            raise RegistryError(f"unknown dataset {dataset_id!r}")
        path = Path(entry["path"])
        if not path.is_file():
            raise RegistryError(f"dataset file missing: {path}")
        raw = path.read_bytes()
        if _checksum_hex(raw) != entry["checksum"]:
            raise RegistryError(
                f"dataset {dataset_id!r} changed on disk since registration; "
                "re-register it")
        return entry, raw

    # -- runs ----------------------------------------------------------------

    def run(self, dataset_id: str, model_id: str, seed: int = 0) -> dict:
        entry, raw = self._dataset_bytes(dataset_id)
        spec = MODEL_SPECS.get(model_id)
        if spec is None:
            raise RegistryError(f"unknown model {model_id!r}")
        if spec.kind != entry["kind"]:
            raise RegistryError(
                f"model {model_id!r} codes kind {spec.kind!r}, dataset "
                f"{dataset_id!r} is {entry['kind']!r}")

        start = time.perf_counter()
        model = spec.build(raw)
        container = encode_container(model, raw)
        verify = verify_roundtrip(raw, container, resolve_model)
        wall_time = round(time.perf_counter() - start, 6)

        model_bits = 8 * len(container.model_header) + self.program_bits_constant(model_id)
        score = score_two_part(model_bits, container.payload.length_bits)

        key = f"{dataset_id}::{model_id}::{seed}"
        blob = container.to_bytes()
        container_path = self.container_dir / f"{key.replace('::', '__')}.crmc"
        prior = self.state["results"].get(key)
        if (prior is not None and container_path.exists()
                and container_path.read_bytes() == blob):
            # identical rerun: keep the first run's timing so reports stay
            # byte-stable across repeats
            wall_time = prior["wall_time"]

        report = {
            "dataset": dataset_id,
            "model": model_id,
            "seed": seed,
            "model_bits": score.model_bits,
            "payload_bits": score.payload_bits,
            "total_bits": score.total,
            "verified": verify.ok,
            "wall_time": wall_time,
            "version": __version__,
        }
        if not verify.ok:
            report["first_mismatch_offset"] = verify.first_mismatch_offset
        self.container_dir.mkdir(parents=True, exist_ok=True)
        container_path.write_bytes(blob)
        self.state["results"][key] = report
        self._save()
        return report

    def container_for(self, dataset_id: str, model_id: str, seed: int = 0) -> EncodedContainer:
        path = self.container_dir / f"{dataset_id}__{model_id}__{seed}.crmc"
        if not path.is_file():
            raise RegistryError(f"no stored container for {dataset_id}/{model_id}/{seed}")
        return EncodedContainer.from_bytes(path.read_bytes())

    # -- leaderboard and reports --------------------------------------------

    def leaderboard(self, dataset_id: str) -> list[dict]:
        if dataset_id not in self.state["datasets"]:
            raise RegistryError(f"unknown dataset {dataset_id!r}")
        rows = [r for r in self.state["results"].values()
                if r["dataset"] == dataset_id and r["verified"]]
        # consistent with compare_champion on every adjacent pair; stable
        # sort keeps earlier submissions ahead on full ties
        rows.sort(key=lambda r: (r["total_bits"], r["model_bits"]))
        return rows

    def report_data(self) -> dict:
        results = sorted(self.state["results"].values(),
                         key=lambda r: (r["dataset"], r["model"], r["seed"]))
        datasets = sorted(self.state["datasets"].values(), key=lambda d: d["id"])
        return {"version": __version__, "datasets": datasets, "results": results}

    def report(self, fmt: str = "table") -> str:
        data = self.report_data()
        if fmt == "json":
            return json.dumps(data, indent=2, sort_keys=True) + "\n"
        if fmt != "table":
            raise RegistryError(f"unknown report format {fmt!r}")
        lines = [f"crmbench {data['version']}"]
        lines.append(f"{'dataset':<16} {'model':<18} {'model_bits':>10} "
                     f"{'payload':>12} {'total':>12} {'ok':>3} {'seconds':>9}")
        for r in data["results"]:
            lines.append(f"{r['dataset']:<16} {r['model']:<18} "
                         f"{r['model_bits']:>10} {r['payload_bits']:>12} "
                         f"{r['total_bits']:>12} {'yes' if r['verified'] else 'NO':>3} "
                         f"{r['wall_time']:>9.3f}")
        if not data["results"]:
            lines.append("(no results)")
        return "\n".join(lines) + "\n"

    # -- sampling ------------------------------------------------------------

    def sample(self, model_id: str, count: int, seed: int = 0) -> str:
        spec = MODEL_SPECS.get(model_id)
        if spec is None:
            raise RegistryError(f"unknown model {model_id!r}")
        if not spec.sampleable or spec.default_instance is None:
            raise RegistryError(f"model {model_id!r} is not sampleable")
        if count < 0:
            raise RegistryError("count must be nonnegative")
        if count == 0:
            return ""
        model = spec.default_instance()
        if spec.kind == "text":
            bits = _random_bits(seed, 64 * count + 1024)
            return "\n".join(sample_words(model, bits, count)) + "\n"
        # bit-string models: one 8-symbol sample per line
        n_symbols = count * (8 if model_id != "uniform-byte" else 1)
        bits = _random_bits(seed, 16 * n_symbols + 64)
        symbols = sample_from_model(model, bits, n_symbols)
        if model_id == "uniform-byte":
            return "\n".join(f"{s:02x}" for s in symbols) + "\n"
        lines = ["".join(str(b) for b in symbols[i:i + 8])
                 for i in range(0, len(symbols), 8)]
        return "\n".join(lines) + "\n"
