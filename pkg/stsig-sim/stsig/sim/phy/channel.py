from dataclasses import dataclass, field
from typing import Optional, Tuple, Union

import numpy as np

from stsig.base.utils import as_generator

from .ofdm import OfdmConfig

SPEED_OF_LIGHT = 299_792_458.0

# ITU-R M.1225 Pedestrian B: (delay ns, mean power dB)
PEDESTRIAN_B: Tuple[Tuple[float, float], ...] = (
    (0.0, 0.0),
    (200.0, -0.9),
    (800.0, -4.9),
    (1200.0, -8.0),
    (2300.0, -7.8),
    (3700.0, -23.9),
)

CHANNEL_KINDS = ("awgn", "flat_rayleigh", "pedb")


def jakes_fading(
    doppler_hz: float,
    times: np.ndarray,
    n_paths: int,
    rng: np.random.Generator,
    n_sinusoids: int = 16,
) -> np.ndarray:
    """Rayleigh fading processes with the Jakes Doppler spectrum, by sum of sinusoids.

    Each path is the normalised sum of `n_sinusoids` complex exponentials with random arrival angles
    and phases, which gives unit mean power and the classic J0(2 pi f_d tau) autocorrelation.

    Args:
        doppler_hz (float): Maximum Doppler frequency.
        times (np.ndarray): Sample times in seconds.
        n_paths (int): Number of independent processes.
        rng (np.random.Generator): Random stream.
        n_sinusoids (int): Sinusoids per process. Defaults to 16.

    Returns:
        np.ndarray: Complex gains of shape (n_paths, len(times)).
    """
    angles = rng.uniform(-np.pi, np.pi, size=(n_paths, n_sinusoids, 1))
    phases = rng.uniform(-np.pi, np.pi, size=(n_paths, n_sinusoids, 1))
    argument = 2 * np.pi * doppler_hz * np.cos(angles) * np.asarray(times)[None, None, :] + phases
    return np.exp(1j * argument).sum(axis=1) / np.sqrt(n_sinusoids)


@dataclass
class ChannelRealization:
    """One draw of a block-fading tapped delay line per receive antenna.

    Args:
        gains (np.ndarray): Tap gains, shape (receive antennas, OFDM symbols, taps). Constant within a symbol.
        delays (np.ndarray): Integer tap delays in samples, shape (taps,).
        cfg (OfdmConfig): Numerology the realization was drawn for.
    """

    gains: np.ndarray
    delays: np.ndarray
    cfg: OfdmConfig

    @property
    def n_rx(self) -> int:
        return self.gains.shape[0]

    @property
    def n_symbols(self) -> int:
        return self.gains.shape[1]

    def apply(self, signal: np.ndarray) -> np.ndarray:
        """Convolve a single-antenna transmission with every receive antenna's channel.

        Args:
            signal (np.ndarray): 1-D samples spanning `n_symbols` OFDM symbols.

        Returns:
            np.ndarray: Shape (receive antennas, samples).
        """
        signal = np.asarray(signal).reshape(-1)
        length = self.n_symbols * self.cfg.symbol_length
        assert signal.shape[0] == length, (
            f"Expected {length} samples for {self.n_symbols} symbols, got {signal.shape[0]}."
        )
        out = np.zeros((self.n_rx, length), dtype=np.complex128)
        for tap, delay in enumerate(self.delays):
            delayed = np.concatenate([np.zeros(delay, dtype=np.complex128), signal[: length - delay]])
            per_sample = np.repeat(self.gains[:, :, tap], self.cfg.symbol_length, axis=1)
            out += per_sample * delayed[None, :]
        return out

    def frequency_response(self) -> np.ndarray:
        """H[k] = sum_taps g e^(-j 2 pi k d / S), shape (receive antennas, symbols, subcarriers)."""
        k = np.arange(self.cfg.subcarriers)
        steering = np.exp(-2j * np.pi * np.outer(self.delays, k) / self.cfg.subcarriers)
        return self.gains @ steering


@dataclass(frozen=True)
class ChannelProfile:
    """Statistical description of a link.

    Args:
        kind (str): One of `awgn`, `flat_rayleigh`, `pedb`.
        taps (Tuple[Tuple[float, float], ...]): (delay ns, mean power dB) per tap. Filled in from `kind`
            when left empty.
        speed_kmh (float): Terminal speed, sets the Doppler frequency. Defaults to 3 km/h.
        noise_variance (float): Complex noise power per sample. Defaults to 0.
    """

    kind: str = "awgn"
    taps: Tuple[Tuple[float, float], ...] = field(default=())
    speed_kmh: float = 3.0
    noise_variance: float = 0.0

    def __post_init__(self) -> None:
        assert self.kind in CHANNEL_KINDS, f"Unknown channel kind `{self.kind}`; use one of {CHANNEL_KINDS}."
        if not self.taps:
            object.__setattr__(self, "taps", PEDESTRIAN_B if self.kind == "pedb" else ((0.0, 0.0),))
        delays = [delay for delay, _ in self.taps]
        assert all(d >= 0 for d in delays), f"Tap delays must be non-negative, got {delays}."
        assert all(a < b for a, b in zip(delays, delays[1:])), f"Tap delays must be increasing, got {delays}."
        assert self.speed_kmh >= 0, f"Speed must be non-negative, got {self.speed_kmh}."
        assert self.noise_variance >= 0, f"Noise variance must be non-negative, got {self.noise_variance}."

    @classmethod
    def awgn(cls, noise_variance: float = 0.0) -> "ChannelProfile":
        return cls("awgn", noise_variance=noise_variance)

    @classmethod
    def flat_rayleigh(cls, speed_kmh: float = 3.0, noise_variance: float = 0.0) -> "ChannelProfile":
        return cls("flat_rayleigh", speed_kmh=speed_kmh, noise_variance=noise_variance)

    @classmethod
    def pedb(cls, speed_kmh: float = 3.0, noise_variance: float = 0.0) -> "ChannelProfile":
        return cls("pedb", speed_kmh=speed_kmh, noise_variance=noise_variance)

    def with_noise(self, noise_variance: float) -> "ChannelProfile":
        return ChannelProfile(self.kind, self.taps, self.speed_kmh, noise_variance)

    @property
    def tap_powers(self) -> np.ndarray:
        """Linear tap powers normalised to a total of one (0 dB)."""
        linear = 10 ** (np.array([power for _, power in self.taps]) / 10)
        return linear / linear.sum()

    def tap_delays(self, cfg: OfdmConfig) -> np.ndarray:
        """Tap delays rounded to whole samples."""
        return np.round(np.array([delay for delay, _ in self.taps]) * 1e-9 * cfg.sample_rate).astype(np.int64)

    def max_delay(self, cfg: OfdmConfig) -> int:
        return int(self.tap_delays(cfg).max())

    def doppler_hz(self, cfg: OfdmConfig) -> float:
        return self.speed_kmh / 3.6 * cfg.carrier_freq / SPEED_OF_LIGHT

    def realize(
        self,
        cfg: OfdmConfig,
        n_rx: int,
        n_symbols: int,
        rng: Union[None, int, np.random.Generator] = None,
        start_time: float = 0.0,
    ) -> ChannelRealization:
        """Draw tap gains for every receive antenna and OFDM symbol.

        Taps that round to the same sample delay are merged.

        Args:
            cfg (OfdmConfig): Numerology.
            n_rx (int): Receive antennas, each with independent fading.
            n_symbols (int): OFDM symbols to cover.
            rng (Union[None, int, np.random.Generator]): Random stream or seed.
            start_time (float): Time of the first symbol in seconds. Defaults to 0.

        Returns:
            ChannelRealization: The drawn channel.
        """
        assert n_rx >= 1 and n_symbols >= 1, "Need at least one antenna and one symbol."
        delays, inverse = np.unique(self.tap_delays(cfg), return_inverse=True)
        if self.kind == "awgn":
            gains = np.ones((n_rx, n_symbols, 1), dtype=np.complex128)
            return ChannelRealization(gains, np.zeros(1, dtype=np.int64), cfg)

        rng = as_generator(rng)
        times = start_time + np.arange(n_symbols) * cfg.symbol_duration
        fading = jakes_fading(self.doppler_hz(cfg), times, n_rx * len(self.taps), rng)
        fading = fading.reshape(n_rx, len(self.taps), n_symbols).transpose(0, 2, 1)
        weighted = fading * np.sqrt(self.tap_powers)[None, None, :]
        gains = np.zeros((n_rx, n_symbols, len(delays)), dtype=np.complex128)
        for tap, merged in enumerate(inverse):
            gains[:, :, merged] += weighted[:, :, tap]
        return ChannelRealization(gains, delays.astype(np.int64), cfg)


def complex_noise(shape: Tuple[int, ...], variance: float, rng: np.random.Generator) -> np.ndarray:
    """Circularly symmetric complex Gaussian noise with the given power."""
    return np.sqrt(variance / 2) * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def apply_channel(
    signal: np.ndarray,
    prof: ChannelProfile,
    cfg: OfdmConfig,
    time_offset: int = 0,
    freq_offset: float = 0.0,
    n_rx: int = 1,
    rng: Union[None, int, np.random.Generator] = None,
    realization: Optional[ChannelRealization] = None,
) -> np.ndarray:
    """Pass a single-antenna transmission through fading, timing and frequency offsets, and noise.

    An integer `freq_offset` moves every subcarrier by that many bins after demodulation. A
    non-negative `time_offset` no larger than the cyclic prefix minus the channel's delay spread leaves
    the demodulated tone positions unchanged.

    Args:
        signal (np.ndarray): 1-D transmitted samples, a whole number of OFDM symbols.
        prof (ChannelProfile): Channel statistics and noise power.
        cfg (OfdmConfig): Numerology.
        time_offset (int): Delay in samples; negative values advance the signal. Defaults to 0.
        freq_offset (float): Offset in subcarrier spacings, applied as a time-domain rotation. Defaults to 0.
        n_rx (int): Receive antennas. Defaults to 1.
        rng (Union[None, int, np.random.Generator]): Random stream or seed, for fading and noise.
        realization (Optional[ChannelRealization]): Pre-drawn channel to use instead of a fresh one.

    Returns:
        np.ndarray: Received samples, shape (n_rx, samples).
    """
    rng = as_generator(rng)
    signal = np.asarray(signal, dtype=np.complex128).reshape(-1)
    assert signal.shape[0] % cfg.symbol_length == 0, "Signal must span a whole number of OFDM symbols."
    n_symbols = signal.shape[0] // cfg.symbol_length
    if realization is None:
        realization = prof.realize(cfg, n_rx, n_symbols, rng)
    received = realization.apply(signal)

    if time_offset > 0:
        received = np.concatenate([np.zeros((received.shape[0], time_offset)), received[:, :-time_offset]], axis=1)
    elif time_offset < 0:
        received = np.concatenate([received[:, -time_offset:], np.zeros((received.shape[0], -time_offset))], axis=1)

    if freq_offset != 0:
        n = np.arange(received.shape[1])
        received = received * np.exp(2j * np.pi * freq_offset * n / cfg.subcarriers)[None, :]

    if prof.noise_variance > 0:
        received = received + complex_noise(received.shape, prof.noise_variance, rng)
    return received
