from dataclasses import dataclass
from typing import Optional, Sequence, Union

import numpy as np

from stsig.base.code import Codeword


@dataclass(frozen=True)
class OfdmConfig:
    """OFDM numerology.

    The FFTs are orthonormal, so with the default symbol energy E = S a full-energy STS tone and a
    unit-power data symbol both give time-domain samples of unit average power.

    Args:
        subcarriers (int): Subcarriers per OFDM symbol, S.
        cp_len (int): Cyclic prefix length in samples.
        symbols_per_subframe (int): OFDM symbols per subframe.
        reserved_symbols (int): Leading symbols of a subframe not used for STS.
        sample_rate (float): Sample rate in Hz.
        carrier_freq (float): Carrier frequency in Hz.
        symbol_energy (Optional[float]): Energy of one OFDM symbol, E. Defaults to S.
    """

    subcarriers: int = 512
    cp_len: int = 36
    symbols_per_subframe: int = 14
    reserved_symbols: int = 3
    sample_rate: float = 7.68e6
    carrier_freq: float = 2.0e9
    symbol_energy: Optional[float] = None

    def __post_init__(self) -> None:
        assert self.subcarriers >= 2, f"Need at least 2 subcarriers, got {self.subcarriers}."
        assert self.cp_len >= 0, f"Cyclic prefix length must be non-negative, got {self.cp_len}."
        assert 0 <= self.reserved_symbols < self.symbols_per_subframe, "A subframe must keep at least one STS symbol."
        assert self.sample_rate > 0 and self.carrier_freq > 0, "Rates and frequencies must be positive."

    @property
    def energy(self) -> float:
        return float(self.subcarriers) if self.symbol_energy is None else float(self.symbol_energy)

    @property
    def sts_symbols(self) -> int:
        """OFDM symbols per subframe available to STS, 11 by default."""
        return self.symbols_per_subframe - self.reserved_symbols

    @property
    def symbol_length(self) -> int:
        """Samples per OFDM symbol, cyclic prefix included."""
        return self.subcarriers + self.cp_len

    @property
    def subcarrier_spacing(self) -> float:
        return self.sample_rate / self.subcarriers

    @property
    def symbol_duration(self) -> float:
        return self.symbol_length / self.sample_rate


@dataclass
class ResourceGrid:
    """Complex amplitudes indexed by (antenna, OFDM symbol, subcarrier)."""

    values: np.ndarray

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.complex128)
        if values.ndim == 2:
            values = values[None, :, :]
        assert values.ndim == 3, f"A resource grid is (antennas, symbols, subcarriers), got shape {values.shape}."
        self.values = values

    @classmethod
    def zeros(cls, n_antennas: int, n_symbols: int, cfg: OfdmConfig) -> "ResourceGrid":
        return cls(np.zeros((n_antennas, n_symbols, cfg.subcarriers), dtype=np.complex128))

    @property
    def n_antennas(self) -> int:
        return self.values.shape[0]

    @property
    def n_symbols(self) -> int:
        return self.values.shape[1]

    @property
    def n_subcarriers(self) -> int:
        return self.values.shape[2]

    def power(self) -> np.ndarray:
        return np.abs(self.values) ** 2

    def symbol_energy(self) -> np.ndarray:
        """Energy per (antenna, symbol)."""
        return self.power().sum(axis=-1)

    def copy(self) -> "ResourceGrid":
        return ResourceGrid(self.values.copy())

    def __add__(self, other: "ResourceGrid") -> "ResourceGrid":
        assert self.values.shape == other.values.shape, (
            f"Grid shapes differ: {self.values.shape}, {other.values.shape}."
        )
        return ResourceGrid(self.values + other.values)


def _check_grid(grid: ResourceGrid, cfg: OfdmConfig) -> None:
    assert grid.n_subcarriers == cfg.subcarriers, (
        f"Grid has {grid.n_subcarriers} subcarriers, config {cfg.subcarriers}."
    )


def ofdm_modulate(grid: ResourceGrid, cfg: OfdmConfig) -> np.ndarray:
    """Orthonormal IFFT per symbol with the cyclic prefix prepended.

    Returns:
        np.ndarray: Samples of shape (antennas, symbols * (S + cp_len)).
    """
    _check_grid(grid, cfg)
    body = np.fft.ifft(grid.values, axis=-1, norm="ortho")
    with_cp = np.concatenate([body[..., cfg.subcarriers - cfg.cp_len :], body], axis=-1)
    return with_cp.reshape(grid.n_antennas, -1)


def ofdm_demodulate(samples: np.ndarray, cfg: OfdmConfig) -> ResourceGrid:
    """Drop the cyclic prefix and apply an orthonormal FFT per symbol.

    Args:
        samples (np.ndarray): Shape (antennas, n * (S + cp_len)) or a single antenna's 1-D samples.
        cfg (OfdmConfig): Numerology.

    Returns:
        ResourceGrid: The received grid.
    """
    samples = np.atleast_2d(samples)
    assert samples.shape[-1] % cfg.symbol_length == 0, (
        f"{samples.shape[-1]} samples is not a whole number of {cfg.symbol_length}-sample symbols."
    )
    symbols = samples.reshape(samples.shape[0], -1, cfg.symbol_length)[..., cfg.cp_len :]
    return ResourceGrid(np.fft.fft(symbols, axis=-1, norm="ortho"))


def modulate_sts(
    c: Union[Codeword, Sequence[int]], energy_fraction: float, cfg: OfdmConfig, phase: float = 0.0
) -> ResourceGrid:
    """One unmodulated tone per OFDM symbol at the codeword's index.

    Args:
        c (Union[Codeword, Sequence[int]]): Tone index per symbol.
        energy_fraction (float): Share of the symbol energy put on the tone, in [0, 1].
        cfg (OfdmConfig): Numerology.
        phase (float): Common tone phase in radians. Defaults to 0.

    Returns:
        ResourceGrid: Single-antenna grid with one nonzero subcarrier per symbol.
    """
    assert 0.0 <= energy_fraction <= 1.0, f"Energy fraction must be in [0, 1], got {energy_fraction}."
    indices = np.asarray(c.indices if isinstance(c, Codeword) else c, dtype=np.int64)
    assert np.all((indices >= 0) & (indices < cfg.subcarriers)), (
        f"Tone indices {indices.tolist()} do not fit {cfg.subcarriers} subcarriers."
    )
    grid = ResourceGrid.zeros(1, len(indices), cfg)
    grid.values[0, np.arange(len(indices)), indices] = np.sqrt(energy_fraction * cfg.energy) * np.exp(1j * phase)
    return grid


def papr(grid: ResourceGrid, cfg: OfdmConfig) -> float:
    """Peak-to-average power ratio, in dB, of the time-domain signal without cyclic prefix."""
    _check_grid(grid, cfg)
    power = np.abs(np.fft.ifft(grid.values, axis=-1, norm="ortho")) ** 2
    mean = power.mean()
    assert mean > 0, "PAPR of an all-zero signal is undefined."
    return float(10 * np.log10(power.max() / mean))


def db_to_linear(value_db: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    return 10 ** (np.asarray(value_db, dtype=float) / 10)


def linear_to_db(value: Union[float, np.ndarray]) -> Union[float, np.ndarray]:
    return 10 * np.log10(np.asarray(value, dtype=float))
