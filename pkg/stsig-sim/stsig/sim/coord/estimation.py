from typing import List, Optional, Union

import numpy as np

from stsig.base.code import Codeword

from stsig.sim.phy import ToneDetection


def estimate_tone_gains(det: ToneDetection, decoded: Union[Codeword, List[int]], tx_amplitude: complex) -> np.ndarray:
    """Per-tone channel gains: received amplitude over transmitted amplitude.

    Args:
        det (ToneDetection): Detections with per-antenna amplitudes.
        decoded (Union[Codeword, List[int]]): The decoded codeword, one tone per detected symbol.
        tx_amplitude (complex): Transmitted tone amplitude.

    Returns:
        np.ndarray: Shape (symbols, antennas); rows are NaN where the tone was not detected.
    """
    assert tx_amplitude != 0, "Transmitted amplitude must be nonzero."
    indices = decoded.indices if isinstance(decoded, Codeword) else list(decoded)
    assert len(indices) == det.n_symbols, f"Codeword has {len(indices)} symbols, detection {det.n_symbols}."
    n_antennas = next((a.shape[1] for a in det.amplitudes if a.size), 1)
    gains = np.full((len(indices), n_antennas), np.nan + 0j, dtype=np.complex128)
    for symbol, index in enumerate(indices):
        amplitude = det.amplitude(symbol, index)
        if amplitude is not None:
            gains[symbol] = amplitude / tx_amplitude
    return gains


def resource_bands(n_subcarriers: int, n_resources: int) -> List[range]:
    """Split the subcarriers into `n_resources` contiguous, equal sub-bands."""
    assert n_resources >= 1 and n_subcarriers % n_resources == 0, (
        f"{n_subcarriers} subcarriers do not split into {n_resources} equal resources."
    )
    width = n_subcarriers // n_resources
    return [range(r * width, (r + 1) * width) for r in range(n_resources)]


def estimate_channel_from_sts(
    det: ToneDetection,
    decoded: Union[Codeword, List[int]],
    tx_amplitude: complex,
    n_subcarriers: int,
    n_resources: int,
) -> List[Optional[np.ndarray]]:
    """Downlink leakage rows towards an STS sender, one per resource.

    Tone gains measured on the uplink are averaged over the tones that fall in each resource's
    sub-band. By reciprocity the downlink row from this base station to the sender is the transpose of
    that uplink vector.

    Args:
        det (ToneDetection): Detections with per-antenna amplitudes.
        decoded (Union[Codeword, List[int]]): The sender's decoded codeword.
        tx_amplitude (complex): Transmitted tone amplitude.
        n_subcarriers (int): Subcarriers in the grid.
        n_resources (int): Number of resources R.

    Returns:
        List[Optional[np.ndarray]]: Per resource, the (antennas,) channel row, or None when no tone of the
            sender was detected in that sub-band.
    """
    indices = decoded.indices if isinstance(decoded, Codeword) else list(decoded)
    gains = estimate_tone_gains(det, indices, tx_amplitude)
    detected = ~np.isnan(gains[:, 0])
    estimates: List[Optional[np.ndarray]] = []
    for band in resource_bands(n_subcarriers, n_resources):
        in_band = detected & np.array([index in band for index in indices])
        estimates.append(gains[in_band].mean(axis=0) if in_band.any() else None)
    return estimates
