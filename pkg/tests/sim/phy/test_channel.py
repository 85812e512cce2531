import numpy as np
from pytest import fixture, mark

from stsig.sim.phy import (
    ChannelProfile,
    OfdmConfig,
    apply_channel,
    complex_noise,
    jakes_fading,
    modulate_sts,
    ofdm_demodulate,
    ofdm_modulate,
)
from tests.utils import pytest_assert


@fixture
def cfg() -> OfdmConfig:
    return OfdmConfig()


class TestChannelProfile:
    def test_pedb(self, cfg: OfdmConfig):
        prof = ChannelProfile.pedb()

        assert np.isclose(prof.tap_powers.sum(), 1.0)
        assert prof.tap_delays(cfg).tolist() == [0, 2, 6, 9, 18, 28]
        assert prof.max_delay(cfg) < cfg.cp_len

    def test_doppler(self, cfg: OfdmConfig):
        assert np.isclose(ChannelProfile.pedb(3.0).doppler_hz(cfg), 3.0 / 3.6 * 2e9 / 299_792_458.0)

    def test_awgn_realization(self, cfg: OfdmConfig):
        realization = ChannelProfile.awgn().realize(cfg, 2, 3)

        assert realization.gains.shape == (2, 3, 1)
        np.testing.assert_allclose(realization.frequency_response(), 1.0)

    def test_realize_is_seeded(self, cfg: OfdmConfig):
        prof = ChannelProfile.pedb()

        first = prof.realize(cfg, 2, 4, rng=5)
        second = prof.realize(cfg, 2, 4, rng=5)

        np.testing.assert_array_equal(first.gains, second.gains)
        assert first.gains.shape == (2, 4, 6)

    def test_with_noise(self):
        prof = ChannelProfile.flat_rayleigh(10.0).with_noise(0.5)

        assert prof.kind == "flat_rayleigh"
        assert prof.speed_kmh == 10.0
        assert prof.noise_variance == 0.5

    @mark.parametrize(
        ["kwargs", "message"],
        [
            [{"kind": "tdl"}, "Unknown channel kind `tdl`; use one of ('awgn', 'flat_rayleigh', 'pedb')."],
            [{"kind": "pedb", "speed_kmh": -1.0}, "Speed must be non-negative, got -1.0."],
            [{"kind": "awgn", "noise_variance": -1.0}, "Noise variance must be non-negative, got -1.0."],
        ],
    )
    def test_invalid(self, kwargs: dict, message: str):
        with pytest_assert(AssertionError, message):
            ChannelProfile(**kwargs)


class TestFading:
    def test_jakes_unit_power(self):
        gains = jakes_fading(5.0, np.linspace(0, 1, 50), 2000, np.random.default_rng(0))

        assert gains.shape == (2000, 50)
        assert abs(np.mean(np.abs(gains) ** 2) - 1.0) < 0.05

    def test_static_without_doppler(self):
        gains = jakes_fading(0.0, np.linspace(0, 1, 10), 3, np.random.default_rng(0))

        np.testing.assert_allclose(gains, gains[:, :1] * np.ones((1, 10)))

    def test_noise_power(self):
        noise = complex_noise((200_000,), 2.0, np.random.default_rng(0))

        assert abs(np.mean(np.abs(noise) ** 2) - 2.0) < 0.05


class TestApplyChannel:
    def test_frequency_response_matches_grid(self, cfg: OfdmConfig):
        prof = ChannelProfile.pedb()
        grid = modulate_sts([10, 100, 200], 1.0, cfg)
        realization = prof.realize(cfg, 2, 3, rng=1)

        received = apply_channel(ofdm_modulate(grid, cfg)[0], prof, cfg, realization=realization)

        expected = grid.values * realization.frequency_response()
        np.testing.assert_allclose(ofdm_demodulate(received, cfg).values, expected, atol=1e-9)

    def test_noise_added(self, cfg: OfdmConfig):
        samples = np.zeros(4 * cfg.symbol_length)

        received = apply_channel(samples, ChannelProfile.awgn(1.0), cfg, n_rx=2, rng=0)

        assert received.shape == (2, samples.shape[0])
        assert abs(np.mean(np.abs(received) ** 2) - 1.0) < 0.1

    def test_partial_symbol(self, cfg: OfdmConfig):
        with pytest_assert(AssertionError, "Signal must span a whole number of OFDM symbols."):
            apply_channel(np.zeros(10), ChannelProfile.awgn(), cfg)
