from typing import List, Sequence, Union

import galois
import numpy as np

from .field import FieldElement, FieldSpec

Matrix = Sequence[Sequence[Union[FieldElement, int]]]
Vector = Sequence[Union[FieldElement, int]]


def to_field_array(values: Union[Matrix, Vector, np.ndarray], field: FieldSpec) -> galois.FieldArray:
    """Convert nested sequences of FieldElements or integers to a `galois` array over `field`.

    Integers are reduced modulo p. FieldElements from another field are rejected.

    Args:
        values (Union[Matrix, Vector, np.ndarray]): Values to convert.
        field (FieldSpec): Target field.

    Returns:
        galois.FieldArray: The same values as a field array.
    """
    if isinstance(values, galois.FieldArray):
        assert type(values).order == field.p, f"Field mismatch: GF({type(values).order}) and {field}."
        return values

    def _to_int(value: Union[FieldElement, int]) -> int:
        if isinstance(value, FieldElement):
            assert value.field == field, f"Field mismatch: {value.field} and {field}."
            return value.value
        return int(value) % field.p

    raw = np.asarray(values, dtype=object)
    flat = np.array([_to_int(v) for v in raw.ravel()], dtype=np.int64).reshape(raw.shape)
    return field.galois_field(flat)


def to_elements(values: galois.FieldArray, field: FieldSpec) -> List[FieldElement]:
    """Convert a 1-D field array back to a list of FieldElements."""
    return [FieldElement(int(v), field) for v in np.asarray(values).ravel()]


def matrix_rank(A: Union[Matrix, np.ndarray], field: FieldSpec) -> int:
    """Rank of `A` over GF(p), by exact row reduction."""
    return int(np.linalg.matrix_rank(to_field_array(A, field)))


def invert_matrix(A: Union[Matrix, np.ndarray], field: FieldSpec) -> galois.FieldArray:
    """Inverse of a square matrix over GF(p).

    Args:
        A (Union[Matrix, np.ndarray]): Square, invertible matrix.
        field (FieldSpec): Field to work in.

    Returns:
        galois.FieldArray: A^-1 with exact field arithmetic.
    """
    array = to_field_array(A, field)
    assert array.ndim == 2 and array.shape[0] == array.shape[1], f"Matrix must be square, got shape {array.shape}."
    assert matrix_rank(array, field) == array.shape[0], f"Matrix is singular over {field}."
    return np.linalg.inv(array)


def solve_linear(A: Union[Matrix, np.ndarray], b: Union[Vector, np.ndarray], field: FieldSpec) -> List[FieldElement]:
    """Solve A x = b over GF(p) with Gaussian elimination in exact field arithmetic.

    Args:
        A (Union[Matrix, np.ndarray]): Square, invertible matrix.
        b (Union[Vector, np.ndarray]): Right-hand side.
        field (FieldSpec): Field to work in.

    Returns:
        List[FieldElement]: The unique solution x.
    """
    matrix = to_field_array(A, field)
    rhs = to_field_array(b, field)
    assert matrix.ndim == 2 and matrix.shape[0] == matrix.shape[1], f"Matrix must be square, got shape {matrix.shape}."
    assert rhs.shape == (matrix.shape[0],), f"Right-hand side must have length {matrix.shape[0]}, got {rhs.shape}."
    assert matrix_rank(matrix, field) == matrix.shape[0], f"Matrix is singular over {field}."
    return to_elements(np.linalg.solve(matrix, rhs), field)
