import math

from pytest import fixture

from stsig.sim.experiments import TABLE_SCHEMAS, NetworkExperiment, StsLinkExperiment, UplinkImpactExperiment

PHY = {"profile": "desk", "subcarriers": 32, "cp_len": 4, "channel": "awgn", "trials": 2}


@fixture
def network_settings() -> dict:
    return {
        "grid_size": 2,
        "deployment_ratio": 1.0,
        "icrm_profile": "desk",
        "subcarriers": 32,
        "n_resources": 2,
        "n_subframes": 2,
        "n_drops": 2,
        "schemes": ["onoff", "none"],
    }


def _check_schemas(results) -> None:
    for name, table in results.tables().items():
        assert table.columns.tolist() == TABLE_SCHEMAS[name], name


class TestStsLinkExperiment:
    def test_run(self):
        experiment = StsLinkExperiment({**PHY, "signals": 2, "antennas": [1, 2], "sir_db": [math.inf]}, seed=3)

        results = experiment.run()

        _check_schemas(results)
        assert len(results["link"]) == 2
        assert results["link"]["erasure_rate"].tolist() == [0.0, 0.0]
        assert len(results["curves"]) == 2 * 2
        assert len(results["summary"]["messages"]) == 2
        assert results["summary"]["max_error_rate"] == 0.0

    def test_messages_follow_the_seed(self):
        settings = {**PHY, "signals": 3, "antennas": [1], "sir_db": [math.inf], "trials": 1}

        first = StsLinkExperiment(settings, seed=5).run()["summary"]["messages"]
        second = StsLinkExperiment(settings, seed=5).run()["summary"]["messages"]

        assert first == second == sorted(first)

    def test_describe(self):
        assert StsLinkExperiment(PHY, seed=0).describe()["profile"] == "desk"


class TestUplinkImpactExperiment:
    def test_run(self):
        experiment = UplinkImpactExperiment({**PHY, "n_sts": [0, 2], "snr_db": [30.0]}, seed=0)

        results = experiment.run()

        _check_schemas(results)
        assert results["uplink"]["n_sts"].tolist() == [0, 2]
        assert results["curves"]["scheme"].unique().tolist() == ["0_sts_reference", "0_sts", "2_sts_reference", "2_sts"]
        assert results["summary"]["snr_penalty_db"] == {"0": None, "2": None}

    def test_penalty(self):
        settings = {**PHY, "n_sts": [0], "snr_db": [0.0, 30.0], "trials": 3}

        summary = UplinkImpactExperiment(settings, seed=0).run()["summary"]

        assert summary["snr_penalty_db"]["0"] == 0.0
        assert summary["target_per"] == 0.1


class TestNetworkExperiment:
    def test_run(self, network_settings: dict):
        results = NetworkExperiment(network_settings, seed=1).run()

        _check_schemas(results)
        assert sorted(results.tables()) == ["cdf", "curves", "percentiles", "rates"]
        assert results["summary"]["schemes"] == ["none", "onoff"]
        assert set(results["summary"]["delivery"]) == {"none", "onoff"}
        assert len(results["rates"]) == 2 * 2 * 4 * 2

    def test_traces(self, network_settings: dict):
        results = NetworkExperiment({**network_settings, "write_traces": True}, seed=1).run()

        _check_schemas(results)
        assert len(results["onoff"]) == 2 * 2 * 2 * 4 * 2
        assert len(results["sinr"]) == len(results["onoff"])
