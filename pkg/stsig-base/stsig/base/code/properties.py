import itertools
import math
from typing import Optional

import numpy as np

from stsig.base.gf import matrix_rank
from stsig.base.utils import as_generator

from .decoder import valid_tone_sequences
from .sts_code import ENUMERATION_GUARD, StsCode, message_codewords


def _all_symbol_vectors(code: StsCode) -> np.ndarray:
    total = code.p**code.k
    digits = np.arange(1, total, dtype=np.int64)
    powers = code.p ** np.arange(code.k, dtype=np.int64)
    return (digits[:, None] // powers) % code.p


def min_distance_bruteforce(code: StsCode, exhaustive_only: bool = False) -> int:
    """Minimum Hamming distance of the code.

    The code is linear, so this is the minimum weight of a nonzero codeword. When there are at most
    10^6 symbol vectors all of them are encoded. Otherwise the largest number of zero positions a
    nonzero codeword can have is found exactly: a nonzero codeword vanishing on a set of positions
    exists iff those rows of the generator have rank below K.

    Args:
        code (StsCode): The code to measure.
        exhaustive_only (bool): Refuse the rank-based search and enforce the enumeration guard instead.

    Returns:
        int: d_min.
    """
    if code.p**code.k <= ENUMERATION_GUARD:
        codewords = (_all_symbol_vectors(code) @ code.generator.T) % code.p
        return int(np.count_nonzero(codewords, axis=1).min())
    assert not exhaustive_only, f"{code.p ** code.k} messages exceed the enumeration guard of {ENUMERATION_GUARD}."

    for zeros in range(code.n - 1, 0, -1):
        for positions in itertools.combinations(range(code.n), zeros):
            if matrix_rank(code.generator[list(positions), :], code.field) < code.k:
                return code.n - zeros
    return code.n


def check_mds(code: StsCode) -> int:
    """1 if d_min differs from N - K + 1, 0 otherwise."""
    return int(min_distance_bruteforce(code) != code.n - code.k + 1)


def check_offset_recovery(code: StsCode, max_messages: int = 2000, seed: Optional[int] = 0) -> int:
    """Count failures of the uniform-shift properties.

    For every message (or a seeded sample of `max_messages` of them) and every nonzero shift delta, the
    shifted codeword must be invalid and `detect_offset` must return delta.

    Args:
        code (StsCode): The code to check.
        max_messages (int): Messages beyond this count are sampled. Defaults to 2000.
        seed (Optional[int]): Seed for the sample. Defaults to 0.

    Returns:
        int: Number of (message, delta) pairs violating either property.
    """
    n_messages = min(code.n_messages, ENUMERATION_GUARD)
    if n_messages <= max_messages:
        messages = np.arange(n_messages, dtype=np.int64)
    else:
        messages = np.sort(as_generator(seed).choice(n_messages, size=max_messages, replace=False))
    codewords = message_codewords(code, messages)

    failures = 0
    for delta in range(1, code.p):
        shifted = (codewords + delta) % code.p
        transformed = (shifted @ code.z_inv_int.T) % code.p
        still_valid = (transformed[:, 0] == 0) & ~np.any(transformed[:, code.k + 1 :], axis=1)
        wrong_offset = transformed[:, 0] != delta
        failures += int(np.count_nonzero(still_valid | wrong_offset))
    return failures


def check_disambiguation(code: StsCode, signals: int, instances: int = 1000, seed: Optional[int] = 0) -> int:
    """Count instances where superposed signals admit other valid tone-pick sequences.

    Each instance draws `signals` distinct symbol vectors from GF(p)^K, skipping only the all-zero vector
    (the silent codeword), merges their tones per OFDM symbol, and enumerates every pick of one tone per
    symbol. Exactly the transmitted codewords must be valid. This holds whenever K <= ceil(N / G).

    Args:
        code (StsCode): The code to check.
        signals (int): Number of superposed signals G.
        instances (int): Random instances to draw. Defaults to 1000.
        seed (Optional[int]): Seed for the draws. Defaults to 0.

    Returns:
        int: Number of failing instances.
    """
    assert signals >= 1, f"Need at least one signal, got {signals}."
    assert signals <= code.p**code.k - 1, f"Cannot draw {signals} distinct nonzero symbol vectors from {code!r}."
    assert code.k <= math.ceil(code.n / signals), (
        f"K={code.k} exceeds ceil(N/G)={math.ceil(code.n / signals)}; disambiguation is not guaranteed."
    )
    rng = as_generator(seed)
    failures = 0
    for _ in range(instances):
        symbol_vectors: set = set()
        while len(symbol_vectors) < signals:
            u = tuple(int(s) for s in rng.integers(0, code.p, size=code.k))
            if any(u):
                symbol_vectors.add(u)
        sent = [((np.array(u, dtype=np.int64) @ code.generator.T) % code.p).tolist() for u in sorted(symbol_vectors)]
        tone_sets = [{c[n] for c in sent} for n in range(code.n)]
        found = {cw.indices for cw in valid_tone_sequences(tone_sets, code)}
        failures += int(found != {tuple(c) for c in sent})
    return failures

