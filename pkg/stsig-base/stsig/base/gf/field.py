import builtins
from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterator, Type

import galois


@lru_cache(maxsize=None)
def _galois_field(p: int) -> Type[galois.FieldArray]:
    return galois.GF(p)


@dataclass(frozen=True)
class FieldSpec:
    """The prime field GF(p).

    Only prime fields are supported: shifting a tone index by whole subcarriers must be the same
    thing as adding a field element, and that identification breaks in extension fields.

    Args:
        p (int): The modulus. Must be prime.
    """

    p: int

    def __post_init__(self) -> None:
        assert isinstance(self.p, int) and self.p >= 2, f"GF({self.p}): modulus must be an integer >= 2."
        assert galois.is_prime(self.p), f"GF({self.p}): modulus must be prime."

    @property
    def order(self) -> int:
        """Number of elements, i.e. the symbol D."""
        return self.p

    @property
    def galois_field(self) -> Type[galois.FieldArray]:
        """The matching `galois` array class, used for the matrix work in `gf.linalg`."""
        return _galois_field(self.p)

    def element(self, value: int) -> "FieldElement":
        """Create an element, reducing `value` modulo p."""
        return FieldElement(int(value) % self.p, self)

    def zero(self) -> "FieldElement":
        return FieldElement(0, self)

    def one(self) -> "FieldElement":
        return FieldElement(1, self)

    def elements(self) -> Iterator["FieldElement"]:
        """Iterate over all p elements in increasing value."""
        for value in range(self.p):
            yield FieldElement(value, self)

    def __str__(self) -> str:
        return f"GF({self.p})"


@dataclass(frozen=True)
class FieldElement:
    """An element of a prime field.

    Args:
        value (int): Representative in [0, p - 1].
        field (FieldSpec): The field this element belongs to.
    """

    value: int
    field: FieldSpec

    def __post_init__(self) -> None:
        assert 0 <= self.value < self.field.p, f"{self.value} is not a valid element of {self.field}."

    def _coerce(self, other: Any) -> "FieldElement":
        if isinstance(other, FieldElement):
            assert other.field == self.field, f"Field mismatch: {self.field} and {other.field}."
            return other
        assert isinstance(other, int), f"Cannot combine a field element with {type(other).__name__}."
        return self.field.element(other)

    def __add__(self, other: Any) -> "FieldElement":
        return add(self, self._coerce(other))

    def __radd__(self, other: Any) -> "FieldElement":
        return add(self._coerce(other), self)

    def __sub__(self, other: Any) -> "FieldElement":
        return add(self, -self._coerce(other))

    def __rsub__(self, other: Any) -> "FieldElement":
        return add(self._coerce(other), -self)

    def __neg__(self) -> "FieldElement":
        return FieldElement((-self.value) % self.field.p, self.field)

    def __mul__(self, other: Any) -> "FieldElement":
        return mul(self, self._coerce(other))

    def __rmul__(self, other: Any) -> "FieldElement":
        return mul(self._coerce(other), self)

    def __truediv__(self, other: Any) -> "FieldElement":
        return mul(self, inv(self._coerce(other)))

    def __pow__(self, exponent: int) -> "FieldElement":
        return pow(self, exponent)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def signed(self) -> int:
        """Representative in (-p/2, p/2], the natural reading of a subcarrier offset."""
        return self.value if self.value <= self.field.p // 2 else self.value - self.field.p


def _check_same_field(a: FieldElement, b: FieldElement) -> None:
    assert a.field == b.field, f"Field mismatch: {a.field} and {b.field}."


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    """(a + b) mod p."""
    _check_same_field(a, b)
    return FieldElement((a.value + b.value) % a.field.p, a.field)


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    """(a * b) mod p."""
    _check_same_field(a, b)
    return FieldElement((a.value * b.value) % a.field.p, a.field)


def inv(a: FieldElement) -> FieldElement:
    """Multiplicative inverse of a nonzero element."""
    assert a.value != 0, f"Zero has no inverse in {a.field}."
    return FieldElement(builtins.pow(a.value, -1, a.field.p), a.field)


def pow(a: FieldElement, e: int) -> FieldElement:
    """a**e by square-and-multiply; a**0 is 1, including for a = 0."""
    assert e >= 0, f"Exponent must be non-negative, got {e}."
    return FieldElement(builtins.pow(a.value, e, a.field.p), a.field)


def multiplicative_order(a: FieldElement) -> int:
    """Smallest n >= 1 with a**n = 1.

    Args:
        a (FieldElement): A nonzero element.

    Returns:
        int: The multiplicative order of `a`. Always divides p - 1.
    """
    assert a.value != 0, "Zero has no multiplicative order."
    p = a.field.p
    x, n = a.value, 1
    while x != 1:
        x = (x * a.value) % p
        n += 1
    return n


def element_of_order_at_least(field: FieldSpec, n: int) -> FieldElement:
    """Smallest-valued element whose multiplicative order is at least `n`.

    Its first `n` powers are pairwise distinct, which is all the Vandermonde construction of the
    code needs. Picking the smallest value keeps encoder and decoder in agreement without any
    extra configuration.

    Args:
        field (FieldSpec): The field to search.
        n (int): Required minimum order.

    Returns:
        FieldElement: The evaluation-point generator.
    """
    assert n >= 1, f"Order bound must be positive, got {n}."
    assert n <= field.p - 1, f"{field} has no element of order >= {n} (at most {field.p - 1})."
    for candidate in range(1, field.p):
        element = FieldElement(candidate, field)
        if multiplicative_order(element) >= n:
            return element
    raise AssertionError(f"{field} has no element of order >= {n}.")
