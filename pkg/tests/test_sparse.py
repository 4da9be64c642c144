from fractions import Fraction

import pytest

from nchodge.fields import GF, QQ
from nchodge.sparse import (SparseMatrix, StructuralError, kernel_basis,
                            matrix_from_columns, rank, rank_of_columns)


def M(rows, cols, entries, field=QQ):
    conv = {(i, j): field.from_int(v) for (i, j), v in entries.items()}
    return SparseMatrix(rows, cols, conv)


def test_rank_rational():
    m = M(3, 3, {(0, 0): 1, (0, 1): 2, (1, 0): 2, (1, 1): 4, (2, 2): 1})
    assert rank(m, QQ) == 2


def test_rank_exact_fractions():
    m = SparseMatrix(2, 2, {(0, 0): Fraction(1, 3), (0, 1): Fraction(2, 3),
                            (1, 0): Fraction(1, 2), (1, 1): Fraction(1)})
    assert rank(m, QQ) == 1


def test_rank_mod_p_differs_from_q():
    # determinant 2: invertible over Q, singular over F2
    entries = {(0, 0): 1, (0, 1): 1, (1, 0): 1, (1, 1): 3}
    assert rank(M(2, 2, entries), QQ) == 2
    assert rank(M(2, 2, entries, GF(2)), GF(2)) == 1


def test_kernel_basis_is_exact_kernel():
    m = M(2, 3, {(0, 0): 1, (0, 1): 1, (1, 2): 1})
    ker = kernel_basis(m, QQ)
    assert len(ker) == 1
    for v in ker:
        img = m.apply(v, QQ)
        assert not img


def test_rank_of_columns_and_matrix_from_columns():
    cols = [{0: Fraction(1)}, {0: Fraction(2)}, {1: Fraction(1)}]
    assert rank_of_columns(cols, QQ) == 2
    m = matrix_from_columns(cols, 2)
    assert m.rows == 2 and m.cols == 3


def test_structural_errors():
    with pytest.raises(StructuralError):
        SparseMatrix(1, 1, {(2, 0): Fraction(1)})
    with pytest.raises(StructuralError):
        SparseMatrix(1, 1, {(0, 0): Fraction(0)})


def test_mul_and_identity():
    a = M(2, 2, {(0, 1): 1, (1, 0): 1})
    ident = SparseMatrix.identity(2, QQ)
    assert a.mul(a, QQ).entries == ident.entries
