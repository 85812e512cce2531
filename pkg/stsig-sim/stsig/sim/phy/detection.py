from dataclasses import dataclass
from typing import List, Optional

import numpy as np

from stsig.base.code import ObservedTones

from .ofdm import ResourceGrid

DEFAULT_THRESHOLD = 8.0


@dataclass
class ToneDetection:
    """Detected tones per OFDM symbol.

    Args:
        indices (List[np.ndarray]): Per symbol, detected subcarrier indices, strongest first.
        amplitudes (List[np.ndarray]): Per symbol, complex amplitudes of shape (detections, antennas).
    """

    indices: List[np.ndarray]
    amplitudes: List[np.ndarray]

    @property
    def n_symbols(self) -> int:
        return len(self.indices)

    def counts(self) -> List[int]:
        return [len(i) for i in self.indices]

    def amplitude(self, symbol: int, index: int) -> Optional[np.ndarray]:
        """Per-antenna amplitude of a detected tone, or None when it was not detected."""
        hits = np.flatnonzero(self.indices[symbol] == index)
        return None if len(hits) == 0 else self.amplitudes[symbol][hits[0]]

    def to_observed(self, p: int) -> ObservedTones:
        """Set-form observations; indices outside the field GF(p) cannot be code symbols and are dropped."""
        return ObservedTones.from_sets([[int(i) for i in symbol if i < p] for symbol in self.indices])

    def strongest(self, p: int) -> ObservedTones:
        """Single-signal observations: the strongest in-field tone per symbol, or an erasure."""
        picks = []
        for symbol in self.indices:
            in_field = [int(i) for i in symbol if i < p]
            picks.append(in_field[0] if in_field else None)
        return ObservedTones.from_indices(picks)


def detect_tones(
    grid: ResourceGrid,
    tau: float = DEFAULT_THRESHOLD,
    max_tones: Optional[int] = None,
    floor: float = 1e-9,
) -> ToneDetection:
    """Energy detection of STS tones.

    On every antenna a subcarrier is detected when its power exceeds `tau` times the median subcarrier
    power of that symbol, with the median floored at `floor` times the symbol's peak power so noise-free
    grids still work. Detections are merged over antennas and ranked by the sum of amplitude magnitudes
    over antennas; only the `max_tones` strongest are kept.

    Args:
        grid (ResourceGrid): Received grid.
        tau (float): Threshold relative to the median, > 1. Defaults to 8 (about 9 dB).
        max_tones (Optional[int]): Cap on detections per symbol. Defaults to no cap.
        floor (float): Relative floor of the median. Defaults to 1e-9.

    Returns:
        ToneDetection: Indices and per-antenna amplitudes.
    """
    assert tau > 1, f"Threshold must exceed 1, got {tau}."
    assert max_tones is None or max_tones >= 0, f"max_tones must be non-negative, got {max_tones}."
    power = grid.power()
    reference = np.maximum(np.median(power, axis=-1), floor * power.max(axis=-1))
    hits = np.any(power > tau * reference[..., None], axis=0)
    strength = np.abs(grid.values).sum(axis=0)

    indices, amplitudes = [], []
    for symbol in range(grid.n_symbols):
        found = np.flatnonzero(hits[symbol])
        found = found[np.argsort(-strength[symbol, found], kind="stable")]
        if max_tones is not None:
            found = found[:max_tones]
        indices.append(found)
        amplitudes.append(grid.values[:, symbol, found].T)
    return ToneDetection(indices, amplitudes)


def excise_tones(grid: ResourceGrid, det: ToneDetection) -> ResourceGrid:
    """Zero the detected subcarriers on every antenna; everything else is untouched."""
    assert det.n_symbols == grid.n_symbols, f"Detection covers {det.n_symbols} symbols, grid {grid.n_symbols}."
    out = grid.copy()
    for symbol, found in enumerate(det.indices):
        out.values[:, symbol, found] = 0
    return out


def excision_mask(det: ToneDetection, n_subcarriers: int) -> np.ndarray:
    """Boolean (symbols, subcarriers) mask of excised subcarriers."""
    mask = np.zeros((det.n_symbols, n_subcarriers), dtype=bool)
    for symbol, found in enumerate(det.indices):
        mask[symbol, found] = True
    return mask


def threshold_for_false_alarm(n_bins: int, p_empty: float = 0.99) -> float:
    """Single-antenna threshold for which a noise-only symbol yields no detection with probability `p_empty`.

    Noise bin powers are exponential and the median of n bins is close to ln 2 times the mean, so a bin
    exceeds tau times the median with probability about 2^-tau. Solving (1 - 2^-tau)^n = p_empty gives tau.

    Args:
        n_bins (int): Subcarriers per symbol.
        p_empty (float): Target probability of an empty detection. Defaults to 0.99.

    Returns:
        float: The threshold tau.
    """
    assert n_bins >= 1, f"Need at least one bin, got {n_bins}."
    assert 0 < p_empty < 1, f"Probability must be in (0, 1), got {p_empty}."
    per_bin = -np.expm1(np.log(p_empty) / n_bins)
    return float(-np.log2(per_bin))
