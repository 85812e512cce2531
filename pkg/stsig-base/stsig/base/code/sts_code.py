from dataclasses import dataclass
from functools import cached_property
from typing import List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from stsig.base.gf import FieldElement, FieldSpec, element_of_order_at_least, invert_matrix, multiplicative_order

# Enumerating more messages than this is refused.
ENUMERATION_GUARD = 10**6


@dataclass(frozen=True)
class SymbolVector:
    """The K information symbols u_1..u_K of one message, u_1 first."""

    u: Tuple[FieldElement, ...]

    @property
    def values(self) -> Tuple[int, ...]:
        return tuple(s.value for s in self.u)


@dataclass(frozen=True)
class Codeword:
    """One tone index per OFDM symbol.

    Args:
        c (Tuple[FieldElement, ...]): The N code symbols. Symbol n is the subcarrier energized in OFDM symbol n.
    """

    c: Tuple[FieldElement, ...]

    def __post_init__(self) -> None:
        for symbol in self.c:
            assert isinstance(symbol, FieldElement), (
                f"Code symbols must be FieldElements, got {symbol!r}; use Codeword.from_indices for raw indices."
            )
        fields = {symbol.field for symbol in self.c}
        assert len(fields) <= 1, f"Code symbols mix fields: {sorted(str(f) for f in fields)}."

    @classmethod
    def from_indices(cls, indices: Sequence[int], field: FieldSpec) -> "Codeword":
        for index in indices:
            assert 0 <= int(index) < field.p, f"Tone index {index} is outside [0, {field.p - 1}]."
        return cls(tuple(FieldElement(int(i), field) for i in indices))

    @property
    def indices(self) -> Tuple[int, ...]:
        return tuple(s.value for s in self.c)

    def shifted(self, delta: Union[FieldElement, int]) -> "Codeword":
        """Every tone moved by the same number of subcarriers, modulo p."""
        return Codeword(tuple(s + delta for s in self.c))

    def __len__(self) -> int:
        return len(self.c)


def to_digits(m: int, base: int, k: int) -> List[int]:
    """Base-`base` digits of `m`, least significant first, padded to `k` digits."""
    assert 0 <= m < base**k, f"Message {m} does not fit in {k} digits of base {base}."
    digits = []
    for _ in range(k):
        m, digit = divmod(m, base)
        digits.append(digit)
    return digits


def from_digits(digits: Sequence[int], base: int) -> int:
    """Inverse of `to_digits`."""
    m = 0
    for digit in reversed(digits):
        assert 0 <= digit < base, f"Digit {digit} is outside [0, {base - 1}]."
        m = m * base + digit
    return m


class StsCode:
    def __init__(self, field: FieldSpec, n: int, k: int, beta: Optional[int] = None) -> None:
        """A single-tone-signaling code over GF(p).

        The transform matrix is the Vandermonde matrix Z[n][m] = beta^(n*m), n, m = 0..N-1. A message
        with symbols u is sent as c = Z (0, u_1, .., u_K, 0, .., 0)^T. Because the first column of Z is all
        ones, a uniform shift of every tone by delta shows up as delta in the first element of Z^-1 c,
        which is zero for every unshifted codeword.

        With K = 1 the message m is carried as u_1 = m + 1, so no message maps to the silent all-zero
        codeword and the message space holds p - 1 values.

        Args:
            field (FieldSpec): The field GF(p); p is also the number of usable tone positions D.
            n (int): Block length N, in OFDM symbols.
            k (int): Number of information symbols K, 1 <= K <= N - 1.
            beta (Optional[int]): Evaluation-point generator. Must have multiplicative order >= N.
                Defaults to the smallest such element, so encoder and decoder agree without configuration.
        """
        assert n >= 2, f"Block length must be at least 2, got {n}."
        assert 1 <= k <= n - 1, f"Need 1 <= K <= N - 1, got N={n}, K={k}."
        assert n <= field.p - 1, f"{field} cannot carry a block of length {n}: need N <= p - 1."
        self.field = field
        self.n = n
        self.k = k
        if beta is None:
            self.beta = element_of_order_at_least(field, n)
        else:
            self.beta = field.element(beta)
            assert self.beta.value != 0, "beta must be nonzero."
            order = multiplicative_order(self.beta)
            assert order >= n, f"beta={beta} has order {order} in {field}, need at least {n}."

        gf = field.galois_field
        powers = [[pow(self.beta.value, row * col, field.p) for col in range(n)] for row in range(n)]
        self.z: galois.FieldArray = gf(np.array(powers, dtype=np.int64))
        self.z_inv: galois.FieldArray = invert_matrix(self.z, field)
        # int64 copies for the vectorized decoders; entries stay below p so products fit easily
        self.generator = np.asarray(self.z[:, 1 : k + 1], dtype=np.int64)
        self.z_inv_int = np.asarray(self.z_inv, dtype=np.int64)

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def offset_rule(self) -> bool:
        """True when messages are carried as u_1 = m + 1 (K = 1)."""
        return self.k == 1

    @property
    def n_messages(self) -> int:
        return self.p - 1 if self.offset_rule else self.p**self.k

    def __repr__(self) -> str:
        return f"StsCode({self.field}, N={self.n}, K={self.k}, beta={self.beta.value})"

    def message_to_symbols(self, m: int) -> SymbolVector:
        """Base-D digits of m, least significant digit first."""
        assert 0 <= m < self.n_messages, f"Message {m} is outside [0, {self.n_messages - 1}] for {self!r}."
        if self.offset_rule:
            return SymbolVector((self.field.element(m + 1),))
        return SymbolVector(tuple(self.field.element(d) for d in to_digits(m, self.p, self.k)))

    def symbols_to_message(self, u: SymbolVector) -> int:
        assert len(u.u) == self.k, f"Expected {self.k} symbols, got {len(u.u)}."
        for symbol in u.u:
            assert symbol.field == self.field, f"Field mismatch: {symbol.field} and {self.field}."
        if self.offset_rule:
            assert u.u[0].value != 0, "u_1 = 0 is the silent codeword and carries no message."
            return u.u[0].value - 1
        return from_digits(u.values, self.p)

    def encode(self, u: SymbolVector) -> Codeword:
        """c_n = sum_k u_k beta^(n k)."""
        assert len(u.u) == self.k, f"Expected {self.k} symbols, got {len(u.u)}."
        for symbol in u.u:
            assert symbol.field == self.field, f"Field mismatch: {symbol.field} and {self.field}."
        c = (self.generator @ np.array(u.values, dtype=np.int64)) % self.p
        return Codeword.from_indices(c.tolist(), self.field)

    def encode_message(self, m: int) -> Codeword:
        return self.encode(self.message_to_symbols(m))

    def transform(self, c: Union[Codeword, Sequence[int]]) -> np.ndarray:
        """Z^-1 c as integers."""
        indices = np.asarray(c.indices if isinstance(c, Codeword) else c, dtype=np.int64)
        assert indices.shape == (self.n,), f"Expected {self.n} code symbols, got {indices.shape[0]}."
        return (self.z_inv_int @ indices) % self.p

    def is_valid_codeword(self, c: Union[Codeword, Sequence[int]]) -> bool:
        """Whether Z^-1 c has the leading zero and the trailing zeros of an encoded message."""
        x = self.transform(c)
        return bool(x[0] == 0 and not np.any(x[self.k + 1 :]))

    def detect_offset(self, c: Union[Codeword, Sequence[int]]) -> FieldElement:
        """Recover the uniform shift delta of a shifted codeword.

        Args:
            c (Union[Codeword, Sequence[int]]): A valid codeword with delta added to every symbol.

        Returns:
            FieldElement: delta, i.e. the first element of Z^-1 c.
        """
        x = self.transform(c)
        delta = int(x[0])
        indices = np.asarray(c.indices if isinstance(c, Codeword) else c, dtype=np.int64)
        assert self.is_valid_codeword((indices - delta) % self.p), "Input is not a shifted codeword."
        return self.field.element(delta)

    @cached_property
    def codebook(self) -> np.ndarray:
        """Every message's codeword as rows of an (n_messages, N) integer array, row m for message m."""
        assert self.n_messages <= ENUMERATION_GUARD, (
            f"{self!r} has {self.n_messages} messages, more than the enumeration guard of {ENUMERATION_GUARD}."
        )
        return message_codewords(self, np.arange(self.n_messages, dtype=np.int64))

    def messages_to_symbol_array(self, messages: np.ndarray) -> np.ndarray:
        """Vectorized `message_to_symbols`: (M,) messages to an (M, K) integer array."""
        messages = np.asarray(messages, dtype=np.int64)
        if self.offset_rule:
            return (messages + 1)[:, None]
        powers = self.p ** np.arange(self.k, dtype=np.int64)
        return (messages[:, None] // powers) % self.p


def message_codewords(code: StsCode, messages: np.ndarray) -> np.ndarray:
    """Codewords of many messages at once, as an (M, N) integer array."""
    symbols = code.messages_to_symbol_array(messages)
    return (symbols @ code.generator.T) % code.p
