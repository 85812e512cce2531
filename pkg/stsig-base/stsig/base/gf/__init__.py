from .field import (
    FieldElement,
    FieldSpec,
    add,
    element_of_order_at_least,
    inv,
    mul,
    multiplicative_order,
    pow,
)
from .linalg import invert_matrix, matrix_rank, solve_linear, to_elements, to_field_array
