import numpy as np
import pytest

from app.services.linalg import (
    Matrix,
    inverse,
    is_in_rowspace,
    kernel_basis,
    left_kernel_basis,
    matmul,
    rank,
    restrict_scalars,
    rows_in_rowspace,
    rref,
    scalar_matrix,
    transpose,
)
from app.utils.exceptions import FieldMismatchError, MatrixShapeError


def test_rref_over_gf2(gf2):
    m = Matrix.from_rows(gf2, [[1, 1, 0], [1, 1, 0], [0, 1, 1]])
    reduced, r, pivots = rref(m)
    assert r == 2
    assert pivots == [0, 1]
    assert reduced.tolist() == [[1, 0, 1], [0, 1, 1]]
    assert rank(m) == 2


def test_rref_makes_unit_pivots(gf5):
    m = Matrix.from_rows(gf5, [[2, 4, 1], [3, 1, 0]])
    reduced, r, pivots = rref(m)
    assert r == 2
    for i, c in enumerate(pivots):
        assert reduced.entries[i, c] == 1
        assert np.count_nonzero(reduced.entries[:, c]) == 1


def test_kernel_basis(gf3):
    m = Matrix.from_rows(gf3, [[1, 2, 0, 1], [0, 1, 1, 2]])
    kernel = kernel_basis(m)
    assert kernel.rows + rank(m) == m.cols
    assert not np.any(matmul(m, transpose(kernel)).entries)
    left = left_kernel_basis(transpose(m))
    assert not np.any(matmul(left, transpose(m)).entries)


def test_inverse(gf5, gf9):
    m = Matrix.from_rows(gf5, [[1, 2], [3, 4]])
    assert matmul(m, inverse(m)) == Matrix.identity(gf5, 2)
    n = Matrix.from_rows(gf9, [[3, 1, 0], [0, 2, 5], [0, 0, 1]])
    assert matmul(inverse(n), n) == Matrix.identity(gf9, 3)
    with pytest.raises(MatrixShapeError):
        inverse(Matrix.from_rows(gf5, [[1, 2], [2, 4]]))


def test_rowspace_membership(gf3):
    m, _, _ = rref(Matrix.from_rows(gf3, [[1, 0, 2], [0, 1, 1]]))
    assert is_in_rowspace(m, [2, 1, 2])
    assert not is_in_rowspace(m, [0, 0, 1])
    found = rows_in_rowspace(m, np.array([[1, 1, 0], [1, 1, 1]]))
    assert found.tolist() == [True, False]


def test_scalar_matrix(gf5):
    assert scalar_matrix(gf5, 3, 2).entries.tolist() == [[2, 0, 0], [0, 2, 0], [0, 0, 2]]


def test_restrict_scalars(gf4):
    m = Matrix.from_rows(gf4, [[2, 3], [1, 0]])
    expanded = restrict_scalars(m, 2)
    assert (expanded.rows, expanded.cols) == (2, 4)
    assert set(np.unique(expanded.entries).tolist()) <= {0, 1}
    # 1 -> (1, 0); the generator -> (0, 1)
    assert expanded.entries[1].tolist() == [1, 0, 0, 0]


def test_shape_and_field_errors(gf2, gf3):
    with pytest.raises(MatrixShapeError):
        Matrix(gf2, np.zeros(3, dtype=np.int64))
    with pytest.raises(FieldMismatchError):
        Matrix.from_rows(gf2, [[0, 2]])
    with pytest.raises(MatrixShapeError):
        matmul(Matrix.identity(gf2, 2), Matrix.identity(gf2, 3))
    with pytest.raises(FieldMismatchError):
        matmul(Matrix.identity(gf2, 2), Matrix.identity(gf3, 2))


def test_matrix_is_immutable(gf2):
    m = Matrix.identity(gf2, 2)
    with pytest.raises(ValueError):
        m.entries[0, 0] = 0
