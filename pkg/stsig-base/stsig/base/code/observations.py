from dataclasses import dataclass, field
from enum import Enum
from typing import Any, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from stsig.base.gf import FieldElement

from .sts_code import SymbolVector


@dataclass(frozen=True)
class ObservedTones:
    """Tone indices a receiver detected, per OFDM symbol.

    In the single-signal form each symbol holds at most one index and an empty set marks an erasure.
    In the multi-signal form each symbol holds any number of indices, including none.

    Args:
        symbols (Tuple[FrozenSet[int], ...]): Detected indices per OFDM symbol.
        multi (bool): Whether this is the multi-signal (set) form.
    """

    symbols: Tuple[FrozenSet[int], ...]
    multi: bool = True

    def __post_init__(self) -> None:
        for index_set in self.symbols:
            for index in index_set:
                assert index >= 0, f"Tone index must be non-negative, got {index}."
            if not self.multi:
                assert len(index_set) <= 1, (
                    f"Single-signal observations hold one index per symbol, got {set(index_set)}."
                )

    @classmethod
    def from_indices(cls, indices: Sequence[Optional[int]]) -> "ObservedTones":
        """Single-signal form; `None` is an erasure."""
        return cls(tuple(frozenset() if i is None else frozenset([int(i)]) for i in indices), multi=False)

    @classmethod
    def from_sets(cls, sets: Iterable[Iterable[int]]) -> "ObservedTones":
        """Multi-signal form."""
        return cls(tuple(frozenset(int(i) for i in s) for s in sets), multi=True)

    @classmethod
    def from_json(cls, data: List[Any]) -> "ObservedTones":
        """Parse the JSON form: a list of integers and nulls, or a list of integer lists.

        Args:
            data (List[Any]): The decoded JSON document.

        Returns:
            ObservedTones: Set form if any entry is a list, single-signal form otherwise.
        """
        assert isinstance(data, list), f"Observations must be a JSON array, got {type(data).__name__}."
        if any(isinstance(entry, list) for entry in data):
            assert all(isinstance(entry, list) for entry in data), "Cannot mix index lists with single indices."
            return cls.from_sets(data)
        for entry in data:
            assert entry is None or isinstance(entry, int), f"Unsupported observation entry: {entry!r}."
        return cls.from_indices(data)

    def to_json(self) -> List[Any]:
        if self.multi:
            return [sorted(index_set) for index_set in self.symbols]
        return [next(iter(index_set)) if index_set else None for index_set in self.symbols]

    def indices(self) -> Tuple[Optional[int], ...]:
        """Single-signal view; erased symbols are `None`."""
        assert not self.multi, "Only single-signal observations have one index per symbol."
        return tuple(next(iter(s)) if s else None for s in self.symbols)

    @property
    def n_erased(self) -> int:
        return sum(1 for s in self.symbols if not s)

    def __len__(self) -> int:
        return len(self.symbols)


class DecodeStatus(str, Enum):
    DECODED = "decoded"
    ERASURE = "erasure"


@dataclass(frozen=True)
class Candidate:
    """One accepted message.

    Args:
        symbols (SymbolVector): Information symbols.
        message (int): The message they carry.
        score (int): Number of OFDM symbols where the (shifted) codeword matched the observation.
        offset (FieldElement): Frequency offset in subcarriers between sender and receiver.
    """

    symbols: SymbolVector
    message: int
    score: int
    offset: FieldElement

    def to_json(self) -> dict:
        return {
            "message": self.message,
            "symbols": list(self.symbols.values),
            "score": self.score,
            "offset": self.offset.signed(),
        }


@dataclass(frozen=True)
class DecodeResult:
    status: DecodeStatus
    candidates: Tuple[Candidate, ...] = field(default_factory=tuple)

    @property
    def messages(self) -> List[int]:
        return [c.message for c in self.candidates]

    def to_json(self) -> dict:
        return {"status": self.status.value, "candidates": [c.to_json() for c in self.candidates]}


def erasure() -> DecodeResult:
    return DecodeResult(DecodeStatus.ERASURE, ())


ObservationLike = Union[ObservedTones, Sequence[Optional[int]]]
