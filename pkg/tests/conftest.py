import numpy as np
import pytest

from crmbench.coding import BitString


def random_bits(seed: int, n_bits: int) -> BitString:
    rng = np.random.default_rng(seed)
    n_bytes = (n_bits + 7) // 8
    return BitString(rng.integers(0, 256, n_bytes, dtype=np.uint8).tobytes(), n_bits)


@pytest.fixture
def rng():
    return np.random.default_rng(20260826)


@pytest.fixture
def registry_home(tmp_path, monkeypatch):
    home = tmp_path / "crm-home"
    monkeypatch.setenv("CRM_HOME", str(home))
    return home
