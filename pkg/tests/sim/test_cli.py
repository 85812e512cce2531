import json
from pathlib import Path

import pandas as pd
import yaml
from pytest import fixture, mark

from stsig.sim.cli import EXIT_ERASURE, EXIT_OK, EXIT_USAGE, main
from stsig.sim.manifest import RunManifest

DESK = ["--field", "17", "--n", "4", "--beta", "4"]

TINY_NETWORK = {
    "network": {
        "grid_size": 2,
        "deployment_ratio": 1.0,
        "icrm_profile": "desk",
        "subcarriers": 32,
        "n_resources": 2,
        "n_subframes": 2,
        "n_drops": 2,
        "schemes": ["none"],
    }
}


def _read(path: Path) -> dict:
    return json.loads(path.read_text())


@fixture
def network_config(tmp_path: Path) -> Path:
    path = tmp_path / "tiny.yml"
    path.write_text(yaml.safe_dump(TINY_NETWORK))
    return path


class TestEncode:
    def test_raw_symbols(self, tmp_path: Path):
        out = tmp_path / "encode.json"

        assert main(["encode", *DESK, "--k", "1", "--symbols", "3", "--out", str(out)]) == EXIT_OK

        report = _read(out)
        assert report["codeword"] == [3, 12, 14, 5]
        assert report["message"] == 2
        assert report["symbols"] == [3]

    def test_message(self, tmp_path: Path):
        out = tmp_path / "encode.json"

        assert main(["encode", *DESK, "--message", "6", "--out", str(out)]) == EXIT_OK

        assert _read(out)["codeword"] == [7, 11, 10, 6]

    def test_stdout(self, capsys):
        assert main(["encode", *DESK, "--message", "2"]) == EXIT_OK

        assert json.loads(capsys.readouterr().out)["codeword"] == [3, 12, 14, 5]

    @mark.parametrize(
        "argv",
        [
            ["encode", "--field", "15", "--n", "4", "--message", "1"],
            ["encode", *DESK, "--message", "16"],
            ["encode", *DESK],
            ["encode", "--n", "4", "--message", "1"],
        ],
    )
    def test_usage_errors(self, argv: list):
        assert main(argv) == EXIT_USAGE


class TestDecode:
    @staticmethod
    def _observe(tmp_path: Path, observations: list) -> Path:
        path = tmp_path / "obs.json"
        path.write_text(json.dumps(observations))
        return path

    def test_decoded(self, tmp_path: Path):
        obs, out = self._observe(tmp_path, [3, 12, None, 5]), tmp_path / "decode.json"

        assert main(["decode", *DESK, "--observations", str(obs), "--out", str(out)]) == EXIT_OK

        report = _read(out)
        assert report["status"] == "decoded"
        assert report["candidates"][0]["message"] == 2
        assert report["candidates"][0]["score"] == 3

    def test_erasure(self, tmp_path: Path):
        obs, out = self._observe(tmp_path, [None, None, None, None]), tmp_path / "decode.json"

        assert main(["decode", *DESK, "--observations", str(obs), "--out", str(out)]) == EXIT_ERASURE
        assert _read(out)["status"] == "erasure"

    def test_shifted(self, tmp_path: Path):
        obs, out = self._observe(tmp_path, [5, 14, 16, 7]), tmp_path / "decode.json"

        argv = ["decode", *DESK, "--observations", str(obs), "--offset-window", "2", "--out", str(out)]
        assert main(argv) == EXIT_OK

        assert _read(out)["candidates"][0]["offset"] == 2

    def test_multi(self, tmp_path: Path):
        obs, out = self._observe(tmp_path, [[3, 7], [12, 11], [14, 10], [5, 6]]), tmp_path / "decode.json"

        assert main(["decode", *DESK, "--observations", str(obs), "--theta", "3", "--out", str(out)]) == EXIT_OK

        assert sorted(c["message"] for c in _read(out)["candidates"]) == [2, 6]

    def test_missing_file(self, tmp_path: Path):
        assert main(["decode", *DESK, "--observations", str(tmp_path / "missing.json")]) == EXIT_USAGE

    def test_invalid_json(self, tmp_path: Path):
        path = tmp_path / "obs.json"
        path.write_text("{not json")

        assert main(["decode", *DESK, "--observations", str(path)]) == EXIT_USAGE


class TestCheck:
    def test_properties(self, tmp_path: Path):
        out = tmp_path / "check.json"

        assert main(["check", *DESK, "--signals", "2", "--instances", "20", "--out", str(out)]) == EXIT_OK

        report = _read(out)
        assert report["min_distance"] == 4
        assert report["singleton_bound"] == 4
        assert report["mds_failures"] == 0
        assert report["disambiguation_failures"] == 0


class TestExperiment:
    def test_network(self, tmp_path: Path, network_config: Path):
        out = tmp_path / "run"

        argv = ["experiment", "network", "--config", str(network_config), "--out", str(out), "--seed", "1"]
        assert main(argv) == EXIT_OK

        for name in ["rates.csv", "percentiles.csv", "cdf.csv", "curves.csv", "summary.json", "manifest.json"]:
            assert (out / name).exists(), name
        manifest = RunManifest.read(out / "manifest.json")
        assert manifest.seed == 1
        assert manifest.parameters["network"]["n_drops"] == 2
        assert manifest.wall_clock_s is not None
        assert _read(out / "summary.json")["summary"]["schemes"] == ["none"]

    def test_manifest_rerun(self, tmp_path: Path, network_config: Path):
        first, second = tmp_path / "first", tmp_path / "second"
        main(["experiment", "network", "--config", str(network_config), "--out", str(first), "--seed", "3"])

        argv = ["experiment", "network", "--manifest", str(first / "manifest.json"), "--out", str(second)]
        assert main(argv) == EXIT_OK

        assert (first / "rates.csv").read_bytes() == (second / "rates.csv").read_bytes()

    def test_threads(self, tmp_path: Path, network_config: Path):
        base = ["experiment", "network", "--config", str(network_config), "--seed", "2"]

        main([*base, "--out", str(tmp_path / "one"), "--threads", "1"])
        main([*base, "--out", str(tmp_path / "two"), "--threads", "2"])

        assert (tmp_path / "one" / "rates.csv").read_bytes() == (tmp_path / "two" / "rates.csv").read_bytes()

    def test_added_scheme_keeps_rows(self, tmp_path: Path, network_config: Path):
        both = tmp_path / "both.yml"
        both.write_text(yaml.safe_dump({"network": {**TINY_NETWORK["network"], "schemes": ["none", "onoff"]}}))

        main(["experiment", "network", "--config", str(network_config), "--out", str(tmp_path / "a"), "--seed", "4"])
        main(["experiment", "network", "--config", str(both), "--out", str(tmp_path / "b"), "--seed", "4"])

        alone = pd.read_csv(tmp_path / "a" / "rates.csv")
        together = pd.read_csv(tmp_path / "b" / "rates.csv")
        pd.testing.assert_frame_equal(alone, together.loc[together["scheme"] == "none"].reset_index(drop=True))

    @mark.parametrize(
        "argv",
        [
            ["experiment", "mystery", "--out", "unused", "--seed", "1"],
            ["experiment", "network", "--out", "unused"],
        ],
    )
    def test_usage_errors(self, argv: list):
        assert main(argv) == EXIT_USAGE

    def test_invalid_config(self, tmp_path: Path):
        config = tmp_path / "bad.yml"
        config.write_text(yaml.safe_dump({"network": {"n_drops": 0}}))

        argv = ["experiment", "network", "--config", str(config), "--out", str(tmp_path / "run"), "--seed", "1"]
        assert main(argv) == EXIT_USAGE

    def test_missing_config(self, tmp_path: Path):
        argv = ["experiment", "network", "--config", str(tmp_path / "nope.yml"), "--out", str(tmp_path), "--seed", "1"]
        assert main(argv) == EXIT_USAGE

    def test_manifest_of_other_experiment(self, tmp_path: Path):
        RunManifest("experiment", "sts-link", {}, 1, "0.0.1").write(tmp_path / "manifest.json")

        argv = ["experiment", "network", "--manifest", str(tmp_path / "manifest.json"), "--out", str(tmp_path / "o")]
        assert main(argv) == EXIT_USAGE


@mark.end_to_end
class TestAcceptance:
    def test_sts_link_desk(self, tmp_path: Path):
        config = tmp_path / "link.yml"
        settings = {"profile": "desk", "subcarriers": 32, "cp_len": 4, "trials": 20, "signals": 3, "antennas": [1, 2]}
        settings.update(sir_db=[-6.0, 0.0, 10.0], error_rate_limit=1.0)
        config.write_text(yaml.safe_dump({"sts_link": settings}))
        out = tmp_path / "run"

        assert main(["experiment", "sts-link", "--config", str(config), "--out", str(out), "--seed", "0"]) == EXIT_OK

        link = pd.read_csv(out / "link.csv")
        assert len(link) == 6
        assert link["erasure_rate"].between(0, 1).all()

    def test_data_impact_desk(self, tmp_path: Path):
        config = tmp_path / "impact.yml"
        settings = {"profile": "desk", "subcarriers": 32, "cp_len": 4, "trials": 16, "n_sts": [0, 2]}
        config.write_text(yaml.safe_dump({"data_impact": {**settings, "snr_db": [6.0, 12.0, 18.0, 24.0]}}))
        out = tmp_path / "run"

        assert main(["experiment", "data-impact", "--config", str(config), "--out", str(out), "--seed", "0"]) == 0

        uplink = pd.read_csv(out / "uplink.csv")
        zero = uplink.loc[uplink["n_sts"] == 0]
        assert (zero["per_without"] == zero["per_with"]).all()
