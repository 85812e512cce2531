import itertools
import math
from typing import Iterable, Iterator, List, Optional, Tuple, Union

import numpy as np

from .observations import Candidate, DecodeResult, DecodeStatus, ObservationLike, ObservedTones, erasure
from .sts_code import ENUMERATION_GUARD, Codeword, StsCode, SymbolVector, message_codewords

# Messages scored per batch once the codebook is too large to hold.
CHUNK_SIZE = 2**16


def offset_hypotheses(window: int) -> List[int]:
    """Offsets in [-window, window], ordered 0, 1, -1, 2, -2, ..."""
    assert window >= 0, f"Offset window must be non-negative, got {window}."
    offsets = [0]
    for magnitude in range(1, window + 1):
        offsets.extend([magnitude, -magnitude])
    return offsets


def codebook_chunks(code: StsCode) -> Iterator[Tuple[int, np.ndarray]]:
    """(first message, codewords) batches covering every message in order.

    Codes within the enumeration guard come as one batch, the cached codebook.
    """
    if code.n_messages <= ENUMERATION_GUARD:
        yield 0, code.codebook
        return
    for start in range(0, code.n_messages, CHUNK_SIZE):
        stop = min(start + CHUNK_SIZE, code.n_messages)
        yield start, message_codewords(code, np.arange(start, stop, dtype=np.int64))


def _as_observation(obs: ObservationLike, code: StsCode) -> ObservedTones:
    if not isinstance(obs, ObservedTones):
        obs = ObservedTones.from_indices(list(obs))
    assert len(obs) == code.n, f"Expected observations for {code.n} symbols, got {len(obs)}."
    for index_set in obs.symbols:
        for index in index_set:
            assert index < code.p, f"Tone index {index} is outside [0, {code.p - 1}]."
    return obs


def _candidate(code: StsCode, message: int, score: int, offset: int) -> Candidate:
    return Candidate(
        symbols=code.message_to_symbols(message),
        message=message,
        score=int(score),
        offset=code.field.element(offset),
    )


def _decode_complete(indices: np.ndarray, code: StsCode, offset_window: int) -> Optional[DecodeResult]:
    """Read a complete observation that is a shifted codeword straight off Z^-1 c.

    A shifted codeword matches in every symbol and no other (message, offset) pair can, so this is
    the maximum-likelihood answer. Returns None when the observation is not such a word.
    """
    x = code.transform(indices)
    delta = int(x[0])
    signed = delta if delta <= code.p // 2 else delta - code.p
    if abs(signed) > offset_window or np.any(x[code.k + 1 :]):
        return None
    symbols = x[1 : code.k + 1]
    if code.offset_rule and symbols[0] == 0:
        return None
    message = code.symbols_to_message(SymbolVector(tuple(code.field.element(int(s)) for s in symbols)))
    return DecodeResult(DecodeStatus.DECODED, (_candidate(code, message, code.n, signed),))


def decode_single(obs: ObservationLike, code: StsCode, offset_window: int = 0) -> DecodeResult:
    """Maximum-likelihood decoding of a single STS signal.

    Every message is scored by the number of symbols where its codeword, shifted by the hypothesised
    offset, matches the observed index. The unique best message is returned. It is correct whenever
    2 * errors + erasures <= N - K.

    When the best score is reached at several offsets, the smallest offset magnitude wins. If more than
    one (message, offset) pair is still left at that magnitude the result is an erasure.

    A complete observation that is a shifted codeword is read directly off Z^-1 c. Everything else is
    scored against the codebook, batch by batch for codes beyond the enumeration guard.

    Args:
        obs (ObservationLike): Single-signal observations, one index or erasure (None) per symbol.
        code (StsCode): The code in use.
        offset_window (int): Largest offset magnitude, in subcarriers, to hypothesise. Defaults to 0.

    Returns:
        DecodeResult: One candidate, or an erasure.
    """
    obs = _as_observation(obs, code)
    assert not obs.multi, "decode_single needs single-signal observations; use decode_multi for sets."
    offsets = offset_hypotheses(offset_window)
    raw = obs.indices()
    observed = np.array([i is not None for i in raw])
    indices = np.array([-1 if i is None else i for i in raw], dtype=np.int64)

    if not observed.any():
        return erasure()

    if observed.all():
        direct = _decode_complete(indices, code, offset_window)
        if direct is not None:
            return direct

    best_score = 0
    best: List[Tuple[int, int]] = []
    for start, codewords in codebook_chunks(code):
        codewords = codewords[:, observed]
        for delta in offsets:
            scores = np.sum(codewords == (indices[observed] - delta) % code.p, axis=1)
            top = int(scores.max())
            if top > best_score:
                best_score = top
                best = [(delta, start + int(m)) for m in np.flatnonzero(scores == top)]
            elif top == best_score and top > 0:
                best.extend((delta, start + int(m)) for m in np.flatnonzero(scores == top))

    if best_score == 0:
        return erasure()
    smallest = min(abs(delta) for delta, _ in best)
    best = [(delta, m) for delta, m in best if abs(delta) == smallest]
    if len(best) != 1:
        return erasure()
    delta, message = best[0]
    return DecodeResult(DecodeStatus.DECODED, (_candidate(code, message, best_score, delta),))


def default_threshold(n: int) -> int:
    """ceil((N + 1) / 2), i.e. 6 for N = 11."""
    return math.ceil((n + 1) / 2)


def membership_matrix(obs: ObservedTones, code: StsCode) -> np.ndarray:
    """(N, p) boolean matrix, True where a tone was detected."""
    membership = np.zeros((code.n, code.p), dtype=bool)
    for n, index_set in enumerate(obs.symbols):
        membership[n, list(index_set)] = True
    return membership


def decode_multi(
    obs: Union[ObservedTones, Iterable[Iterable[int]]],
    code: StsCode,
    theta: Optional[int] = None,
    offset_window: int = 0,
) -> DecodeResult:
    """Decode every STS signal present in a set-form observation.

    Each message is scored by the number of symbols whose detected set contains its codeword's tone.
    With an offset window the score of a message is its best score over the hypothesised offsets, the
    smallest offset winning ties, so senders with different oscillator offsets are decoded side by side.
    Every message scoring at least `theta` is accepted. Codes beyond the enumeration guard are scored
    batch by batch.

    Args:
        obs (Union[ObservedTones, Iterable[Iterable[int]]]): Detected indices per symbol.
        code (StsCode): The code in use.
        theta (Optional[int]): Acceptance threshold. Defaults to ceil((N + 1) / 2).
        offset_window (int): Largest offset magnitude, in subcarriers, to hypothesise. Defaults to 0.

    Returns:
        DecodeResult: Accepted candidates, highest score first, or an erasure if none passed.
    """
    if not isinstance(obs, ObservedTones):
        obs = ObservedTones.from_sets(obs)
    obs = _as_observation(obs, code)
    theta = default_threshold(code.n) if theta is None else theta
    assert 1 <= theta <= code.n, f"Threshold must be in [1, {code.n}], got {theta}."

    membership = membership_matrix(obs, code)
    rows = np.arange(code.n)
    offsets = offset_hypotheses(offset_window)
    accepted: List[Tuple[int, int, int]] = []
    for start, codewords in codebook_chunks(code):
        scores = np.stack([membership[rows, (codewords + delta) % code.p].sum(axis=1) for delta in offsets])
        # argmax returns the first maximum, which is the smallest offset thanks to the hypothesis order
        best_offset = np.argmax(scores, axis=0)
        best_score = scores[best_offset, np.arange(scores.shape[1])]
        for m in np.flatnonzero(best_score >= theta):
            accepted.append((int(best_score[m]), start + int(m), offsets[best_offset[m]]))

    if not accepted:
        return erasure()
    accepted.sort(key=lambda a: (-a[0], a[1]))
    return DecodeResult(DecodeStatus.DECODED, tuple(_candidate(code, m, score, delta) for score, m, delta in accepted))


def valid_tone_sequences(obs: Union[ObservedTones, Iterable[Iterable[int]]], code: StsCode) -> List[Codeword]:
    """Every one-index-per-symbol pick from the detected sets that forms a valid codeword.

    Args:
        obs (Union[ObservedTones, Iterable[Iterable[int]]]): Detected indices per symbol.
        code (StsCode): The code in use.

    Returns:
        List[Codeword]: Valid picks in lexicographic order.
    """
    if not isinstance(obs, ObservedTones):
        obs = ObservedTones.from_sets(obs)
    obs = _as_observation(obs, code)
    sets = [sorted(s) for s in obs.symbols]
    total = math.prod(len(s) for s in sets)
    if total == 0:
        return []
    assert total <= ENUMERATION_GUARD, (
        f"{total} tone-pick sequences exceed the enumeration guard of {ENUMERATION_GUARD}."
    )

    sequences = np.array(list(itertools.product(*sets)), dtype=np.int64)
    transformed = (sequences @ code.z_inv_int.T) % code.p
    valid = (transformed[:, 0] == 0) & ~np.any(transformed[:, code.k + 1 :], axis=1)
    return [Codeword.from_indices(row.tolist(), code.field) for row in sequences[valid]]
