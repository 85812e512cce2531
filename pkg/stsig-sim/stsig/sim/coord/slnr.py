from typing import List, Optional, Sequence

import numpy as np

from .onoff import MAX_PRIORITY


def priority_weight(level: int) -> float:
    """Leakage weight of a victim with the given priority level: (level + 1) / 8."""
    assert 0 <= level <= MAX_PRIORITY, f"Priority must be in [0, {MAX_PRIORITY}], got {level}."
    return (level + 1) / (MAX_PRIORITY + 1)


def priority_matrix(levels: Sequence[int]) -> np.ndarray:
    """Diagonal victim weight matrix P."""
    return np.diag([priority_weight(level) for level in levels])


def leakage_channel(rows: Sequence[np.ndarray], n_t: int) -> np.ndarray:
    """Stack victim channel rows h_ik into H_k, shape (victims, n_t); an empty list gives a (0, n_t) matrix."""
    if len(rows) == 0:
        return np.zeros((0, n_t), dtype=np.complex128)
    stacked = np.vstack([np.asarray(r, dtype=np.complex128).reshape(1, -1) for r in rows])
    assert stacked.shape[1] == n_t, f"Victim channels have {stacked.shape[1]} entries, expected {n_t}."
    return stacked


def _weights(H: np.ndarray, P: Optional[np.ndarray]) -> np.ndarray:
    if P is None:
        return np.ones(H.shape[0])
    P = np.asarray(P)
    weights = np.diag(P) if P.ndim == 2 else P
    assert weights.shape == (H.shape[0],), f"{weights.shape[0]} priority weights for {H.shape[0]} victims."
    assert np.all(weights > 0), "Priority weights must be positive."
    return weights.astype(float)


def canonical_phase(v: np.ndarray, tol: float = 1e-12) -> np.ndarray:
    """Rotate `v` so its first non-negligible entry is real and positive."""
    magnitudes = np.abs(v)
    first = int(np.argmax(magnitudes > tol * magnitudes.max()))
    return v * np.exp(-1j * np.angle(v[first]))


def matched_filter(h: np.ndarray) -> np.ndarray:
    """h^H / |h|, phase-canonicalised."""
    h = np.asarray(h, dtype=np.complex128).reshape(-1)
    norm = np.linalg.norm(h)
    assert norm > 0, "Cannot beamform towards an all-zero channel."
    return canonical_phase(h.conj() / norm)


def fixed_beam(n_t: int) -> np.ndarray:
    """Uncoordinated, channel-agnostic beam: equal power on every antenna."""
    return np.ones(n_t, dtype=np.complex128) / np.sqrt(n_t)


def slnr(v: np.ndarray, h_kk: np.ndarray, H_k: np.ndarray, P_k: Optional[np.ndarray], sigma2: float) -> float:
    """Signal-to-leakage-plus-noise ratio |h_kk v|^2 / (sigma2 + sum_i |p_i h_ik v|^2).

    Args:
        v (np.ndarray): Unit-norm beamformer.
        h_kk (np.ndarray): Channel to the served user.
        H_k (np.ndarray): Victim channels, one row each.
        P_k (Optional[np.ndarray]): Diagonal priority matrix or its diagonal. None weighs every victim 1.
        sigma2 (float): Noise power at the served user.

    Returns:
        float: The SLNR (linear).
    """
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    h_kk = np.asarray(h_kk, dtype=np.complex128).reshape(-1)
    H_k = np.asarray(H_k, dtype=np.complex128).reshape(-1, v.shape[0])
    assert h_kk.shape == v.shape, f"Channel has {h_kk.shape[0]} entries, beamformer {v.shape[0]}."
    weights = _weights(H_k, P_k)
    leakage = float(np.sum(np.abs(weights * (H_k @ v)) ** 2))
    denominator = sigma2 + leakage
    assert denominator > 0, "SLNR is undefined without noise or leakage."
    return float(np.abs(h_kk @ v) ** 2 / denominator)


def slnr_beamformer(h_kk: np.ndarray, H_k: np.ndarray, P_k: Optional[np.ndarray], sigma2: float) -> np.ndarray:
    """Beamformer maximising the (priority-weighted) SLNR.

    The numerator matrix h_kk^H h_kk has rank one, so the dominant generalised eigenvector is
    v* = (sigma2 I + (P H)^H (P H))^-1 h_kk^H, normalised and phase-canonicalised.

    Args:
        h_kk (np.ndarray): Channel to the served user.
        H_k (np.ndarray): Victim channels, one row each; may have no rows.
        P_k (Optional[np.ndarray]): Diagonal priority matrix or its diagonal. None weighs every victim 1.
        sigma2 (float): Noise power at the served user.

    Returns:
        np.ndarray: Unit-norm beamformer.
    """
    h_kk = np.asarray(h_kk, dtype=np.complex128).reshape(-1)
    n_t = h_kk.shape[0]
    H_k = np.asarray(H_k, dtype=np.complex128).reshape(-1, n_t)
    assert sigma2 >= 0, f"Noise power must be non-negative, got {sigma2}."
    if H_k.shape[0] == 0:
        return matched_filter(h_kk)

    weighted = _weights(H_k, P_k)[:, None] * H_k
    if sigma2 == 0:
        assert np.linalg.matrix_rank(weighted) == n_t, "Leakage matrix is rank deficient and there is no noise."
    covariance = sigma2 * np.eye(n_t) + weighted.conj().T @ weighted
    v = np.linalg.solve(covariance, h_kk.conj())
    norm = np.linalg.norm(v)
    assert norm > 0, "Cannot beamform towards an all-zero channel."
    return canonical_phase(v / norm)


def beamformer_to_json(v: np.ndarray) -> List[float]:
    """Interleaved [re0, im0, re1, im1, ...]."""
    v = np.asarray(v, dtype=np.complex128).reshape(-1)
    return np.column_stack([v.real, v.imag]).reshape(-1).tolist()


def beamformer_from_json(values: Sequence[float]) -> np.ndarray:
    pairs = np.asarray(values, dtype=float).reshape(-1, 2)
    return pairs[:, 0] + 1j * pairs[:, 1]
