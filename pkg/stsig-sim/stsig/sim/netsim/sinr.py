from typing import Union

import numpy as np


def evaluate_downlink_sinr(
    channels: np.ndarray,
    beams: np.ndarray,
    active: np.ndarray,
    rx_power: np.ndarray,
    noise: Union[float, np.ndarray] = 1.0,
) -> np.ndarray:
    """Downlink SINR of one user per cell on a shared resource.

    SINR_k = |h_kk v_k|^2 P_kk / (noise_k + sum over active i != k of |h_ki v_i|^2 P_ki). Users of
    inactive (OFF) base stations get 0, and OFF base stations contribute no interference.

    Args:
        channels (np.ndarray): Small-scale channels, shape (users k, base stations i, antennas).
        beams (np.ndarray): Unit-norm beamformer of every base station, shape (base stations, antennas).
        active (np.ndarray): Whether each base station transmits, shape (base stations,).
        rx_power (np.ndarray): Received power P_ki before beamforming, shape (users, base stations).
        noise (Union[float, np.ndarray]): Noise power per user, same units as `rx_power`. Defaults to 1.

    Returns:
        np.ndarray: Linear SINR per user.
    """
    channels = np.asarray(channels, dtype=np.complex128)
    n_users, n_bs, n_t = channels.shape
    beams = np.asarray(beams, dtype=np.complex128).reshape(n_bs, n_t)
    active = np.asarray(active, dtype=bool).reshape(n_bs)
    rx_power = np.asarray(rx_power, dtype=float)
    assert n_users == n_bs, f"One user per base station is expected, got {n_users} users and {n_bs} cells."
    assert rx_power.shape == (n_users, n_bs), f"Received powers have shape {rx_power.shape}."
    assert np.all(np.asarray(noise) > 0), "Noise power must be positive."

    received = np.abs(np.einsum("kia,ia->ki", channels, beams)) ** 2 * rx_power * active[None, :]
    signal = np.diag(received).copy()
    interference = received.sum(axis=1) - signal
    return np.where(active, signal / (noise + interference), 0.0)
