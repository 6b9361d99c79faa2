"""HTTP service endpoints and the `crm` command line client."""

import json
import warnings

import pytest
from click.testing import CliRunner

from crmbench.bench import int_lines_bytes, wordlist_bytes
from crmbench.cli import main
from crmbench.numeric import sample_geometric
from crmbench.service import create_app

with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    from starlette.testclient import TestClient


@pytest.fixture
def client(tmp_path):
    return TestClient(create_app(str(tmp_path / "crm")),
                      raise_server_exceptions=False)


@pytest.fixture
def words_file(tmp_path):
    path = tmp_path / "words.txt"
    path.write_bytes(wordlist_bytes())
    return path


class TestService:
    def test_health(self, client):
        body = client.get("/health").json()
        assert "version" in body

    def test_models_listed(self, client):
        ids = {m["model_id"] for m in client.get("/models").json()}
        assert {"uniform-bit", "letter-enhanced", "family-select",
                "delta-image"} <= ids

    def test_register_run_leaderboard(self, client, words_file):
        r = client.post("/datasets", json={"path": str(words_file), "kind": "text"})
        assert r.status_code == 200
        assert r.json()["id"] == "words"
        r = client.post("/runs", json={"dataset": "words",
                                       "model": "letter-1gram"})
        assert r.status_code == 200
        assert r.json()["verified"]
        board = client.get("/leaderboard/words").json()
        assert board["rows"][0]["model"] == "letter-1gram"

    def test_registry_errors_are_400(self, client):
        r = client.post("/runs", json={"dataset": "ghost", "model": "uniform-bit"})
        assert r.status_code == 400
        assert "unknown dataset" in r.json()["detail"]

    def test_sample_endpoint(self, client):
        r = client.post("/samples", json={"model": "letter-enhanced",
                                          "count": 3, "seed": 1})
        assert len(r.json()["text"].strip().split("\n")) == 3

    def test_report_formats(self, client):
        assert client.get("/report").json()["results"] == []
        assert "crmbench" in client.get("/report", params={"format": "table"}).text

    def test_info_endpoints(self, client):
        body = client.get("/info/entropy", params={"rate": 2.0}).json()
        assert body["nats"] == pytest.approx(0.4585, abs=1e-3)
        body = client.get("/info/kl", params={"p": 2.0, "q": 3.0}).json()
        assert body["kl_nats"] == pytest.approx(0.0622, abs=1e-3)

    def test_bounds_endpoints(self, client):
        r = client.post("/bounds/hidden-worm",
                        json={"hypothesis_class": {"size": 1000},
                              "epsilon": 0.1, "n": 100,
                              "trials": 2000, "seed": 5})
        body = r.json()
        assert body["analytic"]["value"] == pytest.approx(0.0266, abs=1e-3)
        assert body["empirical_frequency"] <= body["analytic"]["value"] + 0.01
        r = client.post("/bounds/required-samples",
                        json={"epsilon": 0.01, "delta": 0.05,
                              "hypothesis_class": {"ln_size": 6.9}})
        assert r.json()["unit"] == "samples"

    def test_bound_validation_is_422(self, client):
        r = client.post("/bounds/max-class-size",
                        json={"n": 10, "epsilon": 0.1, "delta": 2.0})
        assert r.status_code == 422


class TestCli:
    def _invoke(self, home, *args):
        runner = CliRunner()
        return runner.invoke(main, ["--home", str(home), *args],
                             catch_exceptions=False)

    def test_full_workflow(self, tmp_path, words_file):
        home = tmp_path / "crm"
        res = self._invoke(home, "register", str(words_file), "--kind", "text")
        assert res.exit_code == 0
        assert "registered words" in res.output
        res = self._invoke(home, "run", "--dataset", "words",
                           "--model", "letter-1gram")
        assert res.exit_code == 0
        assert "verified" in res.output
        res = self._invoke(home, "leaderboard", "words")
        assert res.exit_code == 0
        assert "letter-1gram" in res.output
        res = self._invoke(home, "report", "--format", "json")
        assert json.loads(res.output)["results"][0]["verified"] is True

    def test_sample_deterministic(self, tmp_path):
        home = tmp_path / "crm"
        args = ("sample", "--model", "letter-enhanced",
                "--count", "5", "--seed", "9")
        out1 = self._invoke(home, *args).output
        out2 = self._invoke(home, *args).output
        assert out1 == out2
        assert len(out1.strip().split("\n")) == 5

    def test_usage_error_exit_2(self, tmp_path, words_file):
        home = tmp_path / "crm"
        res = self._invoke(home, "register", str(words_file), "--kind", "text")
        res = self._invoke(home, "run", "--dataset", "words",
                           "--model", "no-such-model")
        assert res.exit_code == 2
        res = self._invoke(home, "leaderboard")  # missing argument
        assert res.exit_code == 2

    def test_bounds_and_info_commands(self, tmp_path):
        home = tmp_path / "crm"
        res = self._invoke(home, "info", "entropy", "2")
        assert json.loads(res.output)["bits"] == pytest.approx(0.6614, abs=1e-3)
        res = self._invoke(home, "bounds", "rule-class-size",
                           "-k", "200", "-e", "1000", "-d", "4")
        body = json.loads(res.output)
        assert body["value"] == pytest.approx(48.82, abs=0.01)
        assert body["unit"] == "nats"
        res = self._invoke(home, "bounds", "hidden-worm", "--size", "1000",
                           "--epsilon", "0.1", "-n", "100")
        assert json.loads(res.output)["analytic"]["value"] == pytest.approx(
            0.0266, abs=1e-3)
