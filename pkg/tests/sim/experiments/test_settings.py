import re

from pytest import mark, raises
from pydantic import ValidationError

from stsig.base.utils import load_yaml_with_jinja
from stsig.sim.experiments import DEFAULTS_PATH, NetworkSettings, StsLinkSettings, SuiteConfig, parse_suite
from stsig.sim.netsim import SimConfig


class TestParseSuite:
    def test_defaults_file_matches_models(self):
        assert parse_suite(load_yaml_with_jinja(DEFAULTS_PATH)) == SuiteConfig()

    def test_partial_sections(self):
        suite = parse_suite({"network": {"n_drops": 3, "schemes": ["none"]}, "sts_link": {"signals": 4}})

        assert suite.network.n_drops == 3
        assert suite.network.schemes == ["none"]
        assert suite.network.grid_size == 5
        assert suite.sts_link.signals == 4

    @mark.parametrize(
        ["parameters", "location"],
        [
            [{"network": {"n_drops": 0}}, "network.n_drops"],
            [{"sts_link": {"bogus": 1}}, "sts_link.bogus"],
            [{"data_impact": {"target_per": 1.5}}, "data_impact.target_per"],
            [{"network": {"schemes": ["mystery"]}}, "network.schemes"],
            [{"sts_link": {"antennas": [0, 2]}}, "sts_link.antennas"],
            [{"surprise": {}}, "surprise"],
        ],
    )
    def test_errors_name_the_field(self, parameters: dict, location: str):
        with raises(ValidationError, match=re.escape(location)):
            parse_suite(parameters)

    def test_network_layout_checks(self):
        with raises(ValidationError, match=re.escape("30 subcarriers do not split into 4 equal resources.")):
            parse_suite({"network": {"subcarriers": 30}})


class TestPhySettings:
    def test_numerology(self):
        settings = StsLinkSettings(profile="desk", subcarriers=32, cp_len=4)

        cfg = settings.ofdm()
        assert cfg.subcarriers == 32
        assert cfg.sample_rate == 32 * 15e3
        assert settings.code().p == 17

    @mark.parametrize("channel", ["awgn", "flat_rayleigh", "pedb"])
    def test_channel(self, channel: str):
        assert StsLinkSettings(channel=channel, speed_kmh=30.0).channel_profile().kind == channel


class TestNetworkSettings:
    def test_sim_config(self):
        settings = NetworkSettings(grid_size=3, n_drops=7, schemes=["onoff"])

        cfg = settings.sim_config()
        assert isinstance(cfg, SimConfig)
        assert cfg.grid_size == 3
        assert "n_drops" not in cfg.model_dump()
