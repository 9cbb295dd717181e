import numpy as np
import pytest

from app.services.classical_groups import (
    agl_matrices,
    gl_matrices,
    gu3_matrices,
    hermitian_root,
    matrix_group_closure,
    normalise_scalar,
    preserves_hermitian_form,
    suzuki_exponent,
    suzuki_unipotent,
    sz_matrices,
)
from app.services.linalg import Matrix, matmul
from app.utils.exceptions import EnumerationCapError, GeometryParameterError


def test_gl_closures(gf2):
    assert len(matrix_group_closure(gl_matrices(gf2, 2))) == 6
    assert len(matrix_group_closure(gl_matrices(gf2, 3))) == 168


def test_closure_limit(gf3):
    with pytest.raises(EnumerationCapError):
        matrix_group_closure(gl_matrices(gf3, 3), limit=100)


def test_agl_matrices_fix_the_affine_chart(gf3):
    for m in agl_matrices(gf3, 3):
        assert m.entries[:, 0].tolist() == [1, 0, 0]
    # |AGL_1(3)| = 6
    assert len(matrix_group_closure(agl_matrices(gf3, 2))) == 6


def test_unitary_generators(gf4):
    assert hermitian_root(gf4) == 2
    matrices = gu3_matrices(gf4)
    assert all(preserves_hermitian_form(gf4, m) for m in matrices)
    assert len(matrix_group_closure(matrices)) == 648
    assert len(matrix_group_closure(matrices, modulo_scalars=True)) == 216


def test_unitary_form_check_rejects(gf4):
    assert not preserves_hermitian_form(gf4, Matrix.from_rows(gf4, [[2, 0, 0], [0, 1, 0], [0, 0, 1]]))


def test_suzuki_exponent(gf8, gf4, gf2):
    assert suzuki_exponent(gf8) == 4
    for field in (gf4, gf2):
        with pytest.raises(GeometryParameterError):
            suzuki_exponent(field)
    with pytest.raises(GeometryParameterError):
        hermitian_root(gf8)


def test_suzuki_unipotents_compose(gf8):
    # products of the unipotent elements stay unitriangular
    a = suzuki_unipotent(gf8, 1, 0)
    b = suzuki_unipotent(gf8, 2, 0)
    product = matmul(a, b)
    assert product.entries[0, 1] == gf8.add(1, 2)
    assert np.array_equal(np.diag(product.entries), [1, 1, 1, 1])


def test_normalise_scalar(gf5):
    m = Matrix.from_rows(gf5, [[0, 2], [4, 1]])
    assert normalise_scalar(m).entries.tolist() == [[0, 1], [2, 3]]


@pytest.mark.slow
def test_suzuki_closure(gf8):
    assert len(matrix_group_closure(sz_matrices(gf8))) == 29120
