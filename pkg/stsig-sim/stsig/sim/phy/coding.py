from typing import Sequence, Tuple

import numpy as np

ERASED = -1

# Gray-coded 16QAM: two bits per axis, 00 -> -3, 01 -> -1, 11 -> +1, 10 -> +3
_GRAY_LEVELS = np.array([-3.0, -1.0, 3.0, 1.0])
_QAM_SCALE = np.sqrt(10.0)


def qam16_modulate(bits: np.ndarray) -> np.ndarray:
    """Map groups of four bits (I pair first) to unit-average-power 16QAM symbols."""
    bits = np.asarray(bits, dtype=np.int64)
    assert bits.shape[-1] % 4 == 0, f"16QAM needs a multiple of 4 bits, got {bits.shape[-1]}."
    groups = bits.reshape(bits.shape[:-1] + (-1, 4))
    i_level = _GRAY_LEVELS[2 * groups[..., 0] + groups[..., 1]]
    q_level = _GRAY_LEVELS[2 * groups[..., 2] + groups[..., 3]]
    return (i_level + 1j * q_level) / _QAM_SCALE


def _axis_bits(level: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    first = (level > 0).astype(np.int64)
    second = (np.abs(level) < 2).astype(np.int64)
    return first, second


def qam16_demodulate(symbols: np.ndarray, erased: np.ndarray = None) -> np.ndarray:
    """Hard-decision Gray demapping; erased symbols give four erased bits.

    Args:
        symbols (np.ndarray): Equalised symbols.
        erased (np.ndarray): Boolean mask of the same shape marking symbols to erase. Defaults to none.

    Returns:
        np.ndarray: Bits with `ERASED` (-1) at erased positions, four per symbol.
    """
    scaled = np.asarray(symbols) * _QAM_SCALE
    b0, b1 = _axis_bits(scaled.real)
    b2, b3 = _axis_bits(scaled.imag)
    bits = np.stack([b0, b1, b2, b3], axis=-1)
    if erased is not None:
        bits[np.asarray(erased, dtype=bool)] = ERASED
    return bits.reshape(bits.shape[:-2] + (-1,))


class ConvolutionalCode:
    def __init__(self, generators: Sequence[int] = (0o133, 0o171), constraint_length: int = 7) -> None:
        """Rate 1/n feed-forward convolutional code with zero-tail termination.

        Generator taps are read most significant bit first, the MSB weighting the current input bit,
        so 133 (octal) is the tap list [1, 0, 1, 1, 0, 1, 1].

        Args:
            generators (Sequence[int]): Generator polynomials. Defaults to (133, 171) octal.
            constraint_length (int): Constraint length K. Defaults to 7.
        """
        assert constraint_length >= 2, f"Constraint length must be at least 2, got {constraint_length}."
        self.k = constraint_length
        self.memory = constraint_length - 1
        self.n_states = 2**self.memory
        self.taps = np.array(
            [[(g >> (constraint_length - 1 - i)) & 1 for i in range(constraint_length)] for g in generators],
            dtype=np.int64,
        )
        # output bits for every register value reg = (current << memory) | state
        registers = np.arange(2 * self.n_states)
        register_bits = (registers[:, None] >> (constraint_length - 1 - np.arange(constraint_length))) & 1
        self._outputs = (register_bits @ self.taps.T) % 2

    @property
    def rate_inverse(self) -> int:
        return self.taps.shape[0]

    def coded_length(self, n_info: int) -> int:
        return (n_info + self.memory) * self.rate_inverse

    def info_length(self, n_coded: int) -> int:
        assert n_coded % self.rate_inverse == 0, f"{n_coded} coded bits is not a whole number of branches."
        return n_coded // self.rate_inverse - self.memory

    def encode(self, bits: np.ndarray) -> np.ndarray:
        """Encode each row of `bits`, appending K - 1 zero tail bits first.

        Args:
            bits (np.ndarray): Shape (..., n_info).

        Returns:
            np.ndarray: Shape (..., (n_info + K - 1) * n), output bits interleaved per branch.
        """
        bits = np.atleast_2d(np.asarray(bits, dtype=np.int64))
        padded = np.concatenate([bits, np.zeros(bits.shape[:-1] + (self.memory,), dtype=np.int64)], axis=-1)
        length = padded.shape[-1]
        streams = [
            np.apply_along_axis(lambda row: np.convolve(row, taps)[:length], -1, padded) % 2 for taps in self.taps
        ]
        return np.stack(streams, axis=-1).reshape(bits.shape[:-1] + (-1,))

    def decode(self, received: np.ndarray) -> np.ndarray:
        """Hard-decision Viterbi decoding of a batch of zero-tail codewords.

        Erased bits (`ERASED`) add nothing to any branch metric.

        Args:
            received (np.ndarray): Shape (batch, coded bits) with values 0, 1 or -1.

        Returns:
            np.ndarray: Decoded information bits, shape (batch, info bits).
        """
        received = np.atleast_2d(np.asarray(received, dtype=np.int64))
        batch = received.shape[0]
        steps = received.shape[1] // self.rate_inverse
        assert steps * self.rate_inverse == received.shape[1], "Coded length must be a whole number of branches."
        assert steps > self.memory, "Codeword is shorter than its tail."
        pairs = received.reshape(batch, steps, self.rate_inverse)

        next_states = np.arange(self.n_states)
        # register value reached from predecessor `x` into `next_state`
        registers = (next_states[:, None] << 1) | np.array([0, 1])[None, :]
        predecessors = registers & (self.n_states - 1)

        metrics = np.full((batch, self.n_states), np.inf)
        metrics[:, 0] = 0.0
        decisions = np.zeros((steps, batch, self.n_states), dtype=np.uint8)
        for t in range(steps):
            observed = pairs[:, t, :]
            valid = observed >= 0
            mismatch = (self._outputs[None, :, :] != observed[:, None, :]) & valid[:, None, :]
            branch = mismatch.sum(axis=-1)
            candidates = metrics[:, predecessors] + branch[:, registers]
            choice = np.argmin(candidates, axis=-1)
            decisions[t] = choice
            metrics = np.take_along_axis(candidates, choice[..., None], axis=-1)[..., 0]

        decoded = np.zeros((batch, steps), dtype=np.int64)
        state = np.zeros(batch, dtype=np.int64)
        rows = np.arange(batch)
        for t in range(steps - 1, -1, -1):
            decoded[:, t] = state >> (self.memory - 1)
            x = decisions[t, rows, state]
            state = ((state << 1) | x) & (self.n_states - 1)
        return decoded[:, : steps - self.memory]


def interleaver(n: int, seed: int = 0) -> np.ndarray:
    """Fixed pseudo-random permutation of `n` positions."""
    return np.random.default_rng(seed).permutation(n)


def deinterleave(values: np.ndarray, permutation: np.ndarray) -> np.ndarray:
    """Undo `values = original[..., permutation]`."""
    out = np.empty_like(values)
    out[..., permutation] = values
    return out
