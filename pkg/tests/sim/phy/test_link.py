import math

import numpy as np
from pytest import fixture, mark

from stsig.base.icrm import DESK
from stsig.sim.phy import (
    ChannelProfile,
    OfdmConfig,
    crossing_snr,
    measured_sir_db,
    run_sts_link,
    run_uplink_impact,
    snr_penalty,
)
from tests.utils import pytest_assert


@fixture
def cfg() -> OfdmConfig:
    return OfdmConfig(subcarriers=32, cp_len=4, sample_rate=32 * 15e3)


class TestStsLink:
    def test_interference_free(self, cfg: OfdmConfig):
        result = run_sts_link([0, 1], DESK.code(), cfg, ChannelProfile.awgn(), [math.inf], n_rx=1, trials=3, seed=0)

        assert result.columns.tolist() == ["sir_db", "n_antennas", "signals", "trials", "erasure_rate", "error_rate"]
        assert result["erasure_rate"].tolist() == [0.0]
        assert result["error_rate"].tolist() == [0.0]
        assert result["signals"].tolist() == [2]

    def test_rates_are_fractions(self, cfg: OfdmConfig):
        result = run_sts_link([0, 5, 9], DESK.code(), cfg, ChannelProfile.pedb(), [-20.0, 0.0], 2, trials=2, seed=1)

        assert len(result) == 2
        assert result["erasure_rate"].between(0, 1).all()
        assert (result["error_rate"] >= 0).all()

    def test_threads_do_not_change_results(self, cfg: OfdmConfig):
        kwargs = dict(messages=[3, 4], code=DESK.code(), cfg=cfg, prof=ChannelProfile.pedb(), sir_db=[-10.0, 0.0])

        single = run_sts_link(**kwargs, n_rx=1, trials=4, seed=9, threads=1)
        pooled = run_sts_link(**kwargs, n_rx=1, trials=4, seed=9, threads=3)

        assert single.equals(pooled)

    def test_repeated_messages(self, cfg: OfdmConfig):
        with pytest_assert(AssertionError, "Messages must be distinct and non-empty."):
            run_sts_link([1, 1], DESK.code(), cfg, ChannelProfile.awgn(), [0.0], 1, 1, 0)

    def test_field_wider_than_grid(self):
        narrow = OfdmConfig(subcarriers=16, cp_len=4)

        with pytest_assert(AssertionError, "GF(17) needs more subcarriers than the 16 available."):
            run_sts_link([1], DESK.code(), narrow, ChannelProfile.awgn(), [0.0], 1, 1, 0)


class TestUplinkImpact:
    def test_without_sts_curves_coincide(self, cfg: OfdmConfig):
        result = run_uplink_impact(0, DESK.code(), cfg, [0.0, 30.0], trials=4, seed=0, prof=ChannelProfile.awgn())

        assert result["per_without"].tolist() == result["per_with"].tolist()
        assert result["per_without"].tolist() == [1.0, 0.0]

    def test_excised_tones_are_recovered(self, cfg: OfdmConfig):
        result = run_uplink_impact(
            2, DESK.code(), cfg, [30.0], trials=4, seed=0, prof=ChannelProfile.awgn(), batch_size=3
        )

        assert result.columns.tolist() == ["snr_db", "n_sts", "trials", "per_without", "per_with"]
        assert result["per_with"].tolist() == [0.0]

    def test_too_many_signals(self, cfg: OfdmConfig):
        with pytest_assert(AssertionError, "Cannot draw", exact=False):
            run_uplink_impact(17, DESK.code(), cfg, [0.0], trials=1, seed=0)


class TestCurves:
    def test_crossing(self):
        assert np.isclose(crossing_snr([0, 1, 2], [1.0, 0.1, 0.01]), 1.0)
        assert np.isclose(crossing_snr([0, 2], [1.0, 0.01]), 1.0)

    def test_never_crosses(self):
        assert math.isnan(crossing_snr([0, 1], [1.0, 0.5]))

    def test_penalty(self):
        snr = [0, 2, 4]

        assert np.isclose(snr_penalty(snr, [1.0, 0.01, 0.001], [1.0, 1.0, 0.01]), 2.0)

    @mark.parametrize(["scale", "expected"], [[0.1, 20.0], [1.0, 0.0], [10.0, -20.0]])
    def test_measured_sir(self, scale: float, expected: float):
        sts = np.ones((1, 100))

        assert np.isclose(measured_sir_db(sts, scale * np.ones((1, 100))), expected)
