import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from stsig.base.code import StsCode, decode_multi
from stsig.base.utils import build_logger, spawn_generator

from .channel import ChannelProfile, apply_channel, complex_noise
from .coding import ConvolutionalCode, deinterleave, interleaver, qam16_demodulate, qam16_modulate
from .detection import DEFAULT_THRESHOLD, detect_tones, excision_mask
from .ofdm import OfdmConfig, ResourceGrid, db_to_linear, linear_to_db, modulate_sts, ofdm_demodulate, ofdm_modulate

logger = build_logger(__name__)


def energy_per_sample(samples: np.ndarray) -> float:
    """Mean received energy per sample, averaged over antennas."""
    return float(np.mean(np.abs(samples) ** 2))


def measured_sir_db(sts_samples: np.ndarray, interference_samples: np.ndarray) -> float:
    """Ratio of received energy per sample of an STS signal and of the interference, in dB."""
    return float(linear_to_db(energy_per_sample(sts_samples) / energy_per_sample(interference_samples)))


def _random_data_signal(cfg: OfdmConfig, n_symbols: int, rng: np.random.Generator) -> np.ndarray:
    """Unit-power QPSK on every subcarrier: a stand-in uplink data transmission."""
    bits = rng.integers(0, 2, size=(2, n_symbols, cfg.subcarriers))
    qpsk = ((2 * bits[0] - 1) + 1j * (2 * bits[1] - 1)) / np.sqrt(2)
    return ofdm_modulate(ResourceGrid(qpsk), cfg)[0]


class StsLinkTrial:
    def __init__(
        self,
        messages: Sequence[int],
        code: StsCode,
        cfg: OfdmConfig,
        prof: ChannelProfile,
        sir_db: Sequence[float],
        n_rx: int,
        seed: int,
        energy_fraction: float = 1.0,
        tau: float = DEFAULT_THRESHOLD,
        max_tones: Optional[int] = None,
        theta: Optional[int] = None,
        interference_to_noise_db: Optional[float] = 10.0,
    ) -> None:
        """One Monte Carlo trial of G simultaneous STS transmissions, evaluated at every SIR point.

        The STS signals, the interfering data signal and a unit noise draw are generated once and
        rescaled per SIR point, so the sweep uses common random numbers.
        """
        self.messages = list(messages)
        self.code = code
        self.cfg = cfg
        self.prof = prof.with_noise(0.0)
        self.sir_db = list(sir_db)
        self.n_rx = n_rx
        self.seed = seed
        self.energy_fraction = energy_fraction
        self.tau = tau
        self.max_tones = 2 * len(self.messages) if max_tones is None else max_tones
        self.theta = theta
        self.interference_to_noise_db = interference_to_noise_db

    def __call__(self, trial: int) -> Tuple[np.ndarray, np.ndarray]:
        rng = spawn_generator(self.seed, trial)
        n_symbols = self.code.n
        length = n_symbols * self.cfg.symbol_length
        max_offset = max(self.cfg.cp_len - self.prof.max_delay(self.cfg), 0)

        sts = np.zeros((self.n_rx, length), dtype=np.complex128)
        for message in self.messages:
            grid = modulate_sts(self.code.encode_message(message), self.energy_fraction, self.cfg)
            tx = ofdm_modulate(grid, self.cfg)
            offset = int(rng.integers(0, max_offset + 1))
            sts += apply_channel(tx[0], self.prof, self.cfg, time_offset=offset, n_rx=self.n_rx, rng=rng)
        data_tx = _random_data_signal(self.cfg, n_symbols, rng)
        data = apply_channel(data_tx, self.prof, self.cfg, n_rx=self.n_rx, rng=rng)
        noise = complex_noise((self.n_rx, length), 1.0, rng)

        sent = set(self.messages)
        sts_power = self.energy_fraction * self.cfg.energy / self.cfg.subcarriers
        erasures = np.zeros(len(self.sir_db), dtype=np.int64)
        errors = np.zeros(len(self.sir_db), dtype=np.int64)
        for point, sir in enumerate(self.sir_db):
            received = sts.copy()
            if not math.isinf(sir):
                total = sts_power / db_to_linear(sir)
                if self.interference_to_noise_db is None:
                    received += np.sqrt(total) * noise
                else:
                    inr = db_to_linear(self.interference_to_noise_db)
                    received += np.sqrt(total * inr / (1 + inr)) * data + np.sqrt(total / (1 + inr)) * noise
            detection = detect_tones(ofdm_demodulate(received, self.cfg), self.tau, self.max_tones)
            decoded = set(decode_multi(detection.to_observed(self.code.p), self.code, self.theta).messages)
            erasures[point] = len(sent - decoded)
            errors[point] = len(decoded - sent)
        return erasures, errors


def run_sts_link(
    messages: Sequence[int],
    code: StsCode,
    cfg: OfdmConfig,
    prof: ChannelProfile,
    sir_db: Sequence[float],
    n_rx: int,
    trials: int,
    seed: int,
    energy_fraction: float = 1.0,
    tau: float = DEFAULT_THRESHOLD,
    max_tones: Optional[int] = None,
    theta: Optional[int] = None,
    interference_to_noise_db: Optional[float] = 10.0,
    threads: int = 1,
) -> pd.DataFrame:
    """Erasure and error rates of G simultaneous STS signals against SIR.

    Every trial, each user sends its codeword through an independent channel with a random timing
    offset inside the cyclic prefix, on top of one interfering uplink data signal plus thermal noise.
    SIR is the received energy per sample of one STS signal over that of interference plus noise;
    `sir_db` may contain `inf` for an interference-free point. The receiver detects tones on every
    antenna, merges them, and runs the multi-signal decoder.

    An erasure is a sent message that is not decoded; an error is a decoded message that was not sent.
    Both rates are normalised by trials * G.

    Args:
        messages (Sequence[int]): The G distinct messages.
        code (StsCode): The STS code.
        cfg (OfdmConfig): Numerology.
        prof (ChannelProfile): Fading profile; its noise variance is ignored.
        sir_db (Sequence[float]): SIR points in dB.
        n_rx (int): Receive antennas.
        trials (int): Trials per point.
        seed (int): Master seed; trial t uses the stream (seed, t).
        energy_fraction (float): Share of the symbol energy on each tone. Defaults to 1.
        tau (float): Detection threshold. Defaults to 8.
        max_tones (Optional[int]): Detection cap per symbol. Defaults to 2 G.
        theta (Optional[int]): Decoder acceptance threshold. Defaults to ceil((N + 1) / 2).
        interference_to_noise_db (Optional[float]): Data interference over thermal noise. None means noise only.
        threads (int): Worker threads. Results do not depend on it.

    Returns:
        pd.DataFrame: One row per SIR point: sir_db, n_antennas, signals, trials, erasure_rate, error_rate.
    """
    assert len(set(messages)) == len(messages) and len(messages) >= 1, "Messages must be distinct and non-empty."
    assert trials >= 1 and n_rx >= 1, "Need at least one trial and one antenna."
    assert code.n <= cfg.symbols_per_subframe, f"A {code.n}-symbol code does not fit a subframe."
    assert code.p <= cfg.subcarriers, f"GF({code.p}) needs more subcarriers than the {cfg.subcarriers} available."
    trial = StsLinkTrial(
        messages, code, cfg, prof, sir_db, n_rx, seed, energy_fraction, tau, max_tones, theta, interference_to_noise_db
    )
    logger.info(f"STS link: {len(messages)} signals, {n_rx} antenna(s), {trials} trials x {len(sir_db)} SIR points")
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        outcomes = list(pool.map(trial, range(trials)))

    erasures = np.sum([o[0] for o in outcomes], axis=0)
    errors = np.sum([o[1] for o in outcomes], axis=0)
    denominator = trials * len(messages)
    return pd.DataFrame(
        {
            "sir_db": [float(s) for s in sir_db],
            "n_antennas": n_rx,
            "signals": len(messages),
            "trials": trials,
            "erasure_rate": erasures / denominator,
            "error_rate": errors / denominator,
        }
    )


class UplinkImpactBatch:
    def __init__(
        self,
        n_sts: int,
        code: StsCode,
        cfg: OfdmConfig,
        prof: ChannelProfile,
        snr_db: Sequence[float],
        seed: int,
        energy_fraction: float = 1.0,
        tau: float = DEFAULT_THRESHOLD,
        max_tones: Optional[int] = None,
        interleaver_seed: int = 0,
    ) -> None:
        """Packet errors of a batch of uplink packets, with and without overlaid STS signals.

        The channel is simulated per subcarrier: with block fading and delays inside the cyclic prefix
        the received grid is exactly the transmitted grid times the channel frequency response.
        """
        self.n_sts = n_sts
        self.code = code
        self.cfg = cfg
        self.prof = prof
        self.snr_db = list(snr_db)
        self.seed = seed
        self.energy_fraction = energy_fraction
        self.tau = tau
        self.max_tones = 2 * n_sts if max_tones is None else max_tones
        self.fec = ConvolutionalCode()
        self.n_symbols = code.n
        self.n_coded = 4 * self.n_symbols * cfg.subcarriers
        self.n_info = self.fec.info_length(self.n_coded)
        self.permutation = interleaver(self.n_coded, interleaver_seed)

    def _draw(self, trial: int) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        rng = spawn_generator(self.seed, trial)
        info = rng.integers(0, 2, size=self.n_info)
        coded = self.fec.encode(info)[0][self.permutation]
        symbols = qam16_modulate(coded).reshape(self.n_symbols, self.cfg.subcarriers)
        response = self.prof.realize(self.cfg, 1, self.n_symbols, rng).frequency_response()[0]

        sts = np.zeros((self.n_symbols, self.cfg.subcarriers), dtype=np.complex128)
        if self.n_sts > 0:
            senders = rng.choice(self.code.n_messages, size=self.n_sts, replace=False)
            for message in senders:
                grid = modulate_sts(self.code.encode_message(int(message)), self.energy_fraction, self.cfg).values[0]
                sts += grid * self.prof.realize(self.cfg, 1, self.n_symbols, rng).frequency_response()[0]
        noise = complex_noise((self.n_symbols, self.cfg.subcarriers), 1.0, rng)
        return info, symbols, response, sts, noise

    def _receive(self, received: np.ndarray, response: np.ndarray) -> np.ndarray:
        detection = detect_tones(ResourceGrid(received[None]), self.tau, self.max_tones)
        erased = excision_mask(detection, self.cfg.subcarriers)
        bits = qam16_demodulate(received / response, erased=erased).reshape(-1)
        return deinterleave(bits, self.permutation)

    def __call__(self, trials: List[int]) -> Tuple[np.ndarray, np.ndarray]:
        draws = [self._draw(trial) for trial in trials]
        info = np.stack([d[0] for d in draws])
        errors_without = np.zeros(len(self.snr_db), dtype=np.int64)
        errors_with = np.zeros(len(self.snr_db), dtype=np.int64)
        for point, snr in enumerate(self.snr_db):
            sigma = np.sqrt(1.0 / db_to_linear(snr))
            clean = [symbols * response + sigma * noise for _, symbols, response, _, noise in draws]
            without = np.stack([self._receive(y, d[2]) for d, y in zip(draws, clean)])
            with_sts = np.stack([self._receive(y + d[3], d[2]) for d, y in zip(draws, clean)])
            errors_without[point] = np.count_nonzero(np.any(self.fec.decode(without) != info, axis=1))
            errors_with[point] = np.count_nonzero(np.any(self.fec.decode(with_sts) != info, axis=1))
        return errors_without, errors_with


def run_uplink_impact(
    n_sts: int,
    code: StsCode,
    cfg: OfdmConfig,
    snr_db: Sequence[float],
    trials: int,
    seed: int,
    prof: Optional[ChannelProfile] = None,
    energy_fraction: float = 1.0,
    tau: float = DEFAULT_THRESHOLD,
    max_tones: Optional[int] = None,
    batch_size: int = 16,
    threads: int = 1,
) -> pd.DataFrame:
    """Packet error rate of a coded 16QAM uplink with and without `n_sts` overlaid STS signals.

    A packet fills the STS symbols of one subframe on every subcarrier: rate-1/2 (133, 171) convolutional
    code, fixed pseudo-random interleaver, Gray 16QAM, PedB fading with perfect channel knowledge. The
    receiver detects tones (at most 2 * n_sts per symbol by default), treats those subcarriers as erased,
    equalises and Viterbi-decodes. Both curves use the same receiver and the same random draws, so with
    no STS signals they coincide. SNR is the per-subcarrier data SNR at the receive antenna.

    Args:
        n_sts (int): Number of simultaneous STS signals.
        code (StsCode): Code the STS signals use.
        cfg (OfdmConfig): Numerology.
        snr_db (Sequence[float]): SNR points in dB.
        trials (int): Packets per point.
        seed (int): Master seed; packet t uses the stream (seed, t).
        prof (Optional[ChannelProfile]): Fading profile. Defaults to PedB at 3 km/h.
        energy_fraction (float): Share of the symbol energy on each STS tone. Defaults to 1.
        tau (float): Detection threshold. Defaults to 8.
        max_tones (Optional[int]): Detection cap per symbol. Defaults to 2 * n_sts.
        batch_size (int): Packets decoded together. Defaults to 16.
        threads (int): Worker threads. Results do not depend on it.

    Returns:
        pd.DataFrame: snr_db, n_sts, trials, per_without, per_with.
    """
    assert n_sts >= 0 and trials >= 1 and batch_size >= 1, "Counts must be non-negative and trials positive."
    assert n_sts <= code.n_messages, f"Cannot draw {n_sts} distinct STS messages from {code!r}."
    prof = ChannelProfile.pedb() if prof is None else prof
    batch = UplinkImpactBatch(n_sts, code, cfg, prof, snr_db, seed, energy_fraction, tau, max_tones)
    batches = [list(range(start, min(start + batch_size, trials))) for start in range(0, trials, batch_size)]
    logger.info(f"Uplink impact: {n_sts} STS signals, {trials} packets x {len(snr_db)} SNR points")
    with ThreadPoolExecutor(max_workers=max(threads, 1)) as pool:
        outcomes = list(pool.map(batch, batches))

    without = np.sum([o[0] for o in outcomes], axis=0)
    with_sts = np.sum([o[1] for o in outcomes], axis=0)
    return pd.DataFrame(
        {
            "snr_db": [float(s) for s in snr_db],
            "n_sts": n_sts,
            "trials": trials,
            "per_without": without / trials,
            "per_with": with_sts / trials,
        }
    )


def crossing_snr(snr_db: Sequence[float], per: Sequence[float], target: float = 0.1, floor: float = 1e-6) -> float:
    """SNR where a PER curve first falls to `target`, interpolating log10(PER) linearly; NaN if it never does."""
    snr = np.asarray(snr_db, dtype=float)
    log_per = np.log10(np.maximum(np.asarray(per, dtype=float), floor))
    log_target = np.log10(target)
    for i in range(1, len(snr)):
        if log_per[i - 1] > log_target >= log_per[i]:
            fraction = (log_per[i - 1] - log_target) / (log_per[i - 1] - log_per[i])
            return float(snr[i - 1] + fraction * (snr[i] - snr[i - 1]))
    return float("nan")


def snr_penalty(
    snr_db: Sequence[float], per_reference: Sequence[float], per_test: Sequence[float], target: float = 0.1
) -> float:
    """Horizontal gap, in dB, between two PER curves at the target PER (positive when `per_test` is worse)."""
    return crossing_snr(snr_db, per_test, target) - crossing_snr(snr_db, per_reference, target)
