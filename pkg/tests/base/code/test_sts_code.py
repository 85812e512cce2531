from pytest import fixture, mark

from stsig.base.code import Codeword, StsCode, SymbolVector, from_digits, to_digits
from stsig.base.gf import FieldSpec
from tests.utils import pytest_assert


@fixture
def code() -> StsCode:
    return StsCode(FieldSpec(17), 4, 1, beta=4)


def symbols(code: StsCode, *values: int) -> SymbolVector:
    return SymbolVector(tuple(code.field.element(v) for v in values))


class TestStsCode:
    @mark.parametrize(["u", "expected"], [[3, [3, 12, 14, 5]], [7, [7, 11, 10, 6]]])
    def test_encode(self, code: StsCode, u: int, expected: list):
        assert list(code.encode(symbols(code, u)).indices) == expected

    def test_canonical_first_message(self):
        code = StsCode(FieldSpec(509), 11, 1)

        assert code.message_to_symbols(0).values == (1,)
        assert code.symbols_to_message(SymbolVector((code.field.element(1),))) == 0

    def test_message_offset_rule(self, code: StsCode):
        assert code.n_messages == 16
        assert code.message_to_symbols(2).values == (3,)
        assert code.symbols_to_message(symbols(code, 3)) == 2
        assert list(code.encode_message(2).indices) == [3, 12, 14, 5]

    def test_silent_codeword_carries_no_message(self, code: StsCode):
        with pytest_assert(AssertionError, "u_1 = 0 is the silent codeword and carries no message."):
            code.symbols_to_message(symbols(code, 0))

    def test_message_out_of_range(self, code: StsCode):
        with pytest_assert(AssertionError, "Message 16 is outside [0, 15] for StsCode(GF(17), N=4, K=1, beta=4)."):
            code.message_to_symbols(16)

    def test_digits_for_larger_k(self):
        code = StsCode(FieldSpec(17), 6, 2)

        assert code.n_messages == 17**2
        assert code.message_to_symbols(17 * 5 + 3).values == (3, 5)
        for m in [0, 1, 100, 288]:
            assert code.symbols_to_message(code.message_to_symbols(m)) == m

    def test_default_beta(self):
        assert StsCode(FieldSpec(17), 4, 1).beta.value == 2
        assert StsCode(FieldSpec(17), 16, 1).beta.value == 3

    @mark.parametrize(
        ["n", "k", "beta", "message"],
        [
            [4, 4, None, "Need 1 <= K <= N - 1, got N=4, K=4."],
            [17, 1, None, "GF(17) cannot carry a block of length 17: need N <= p - 1."],
            [4, 1, 16, "beta=16 has order 2 in GF(17), need at least 4."],
            [4, 1, 0, "beta must be nonzero."],
        ],
    )
    def test_invalid_parameters(self, n: int, k: int, beta, message: str):
        with pytest_assert(AssertionError, message):
            StsCode(FieldSpec(17), n, k, beta=beta)

    def test_valid_codeword(self, code: StsCode):
        assert code.is_valid_codeword([3, 12, 14, 5])
        assert code.is_valid_codeword(Codeword.from_indices([7, 11, 10, 6], code.field))
        assert not code.is_valid_codeword([3, 12, 14, 6])

    def test_detect_offset(self, code: StsCode):
        shifted = code.encode_message(2).shifted(2)

        assert list(shifted.indices) == [5, 14, 16, 7]
        assert not code.is_valid_codeword(shifted)
        assert code.detect_offset(shifted).value == 2
        assert code.detect_offset(code.encode_message(2).shifted(16)).value == 16

    def test_detect_offset_rejects_noise(self, code: StsCode):
        with pytest_assert(AssertionError, "Input is not a shifted codeword."):
            code.detect_offset([3, 12, 14, 6])

    def test_codebook(self, code: StsCode):
        book = code.codebook

        assert book.shape == (16, 4)
        assert book[2].tolist() == [3, 12, 14, 5]
        assert book[6].tolist() == [7, 11, 10, 6]

    def test_codeword_rejects_out_of_field_index(self, code: StsCode):
        with pytest_assert(AssertionError, "Tone index 17 is outside [0, 16]."):
            Codeword.from_indices([1, 2, 3, 17], code.field)

    def test_codeword_rejects_raw_integers(self):
        with pytest_assert(
            AssertionError, "Code symbols must be FieldElements, got 3; use Codeword.from_indices for raw indices."
        ):
            Codeword((3, 12))

    def test_codeword_rejects_mixed_fields(self, code: StsCode):
        other = FieldSpec(19)
        with pytest_assert(AssertionError, "Code symbols mix fields", exact=False):
            Codeword((code.field.element(3), other.element(3)))


class TestDigits:
    @mark.parametrize(["m", "digits"], [[37, [5, 1]], [170, [10, 5]], [0, [0, 0]]])
    def test_base_32(self, m: int, digits: list):
        assert to_digits(m, 32, 2) == digits
        assert from_digits(digits, 32) == m

    def test_round_trip(self):
        assert to_digits(17 * 5 + 3, 17, 2) == [3, 5]
        assert from_digits([3, 5], 17) == 88

    def test_too_large(self):
        with pytest_assert(AssertionError, "Message 289 does not fit in 2 digits of base 17."):
            to_digits(289, 17, 2)
