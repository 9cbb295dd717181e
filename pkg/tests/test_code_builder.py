import numpy as np
import pytest

from app.services.code_builder import (
    FAMILY_DIMENSIONS,
    LinearCode,
    build_norm_twisted_code,
    even_weight_code,
    family_code,
    family_pointset,
    grm_code,
    hamming_code,
    prm_code,
    prm_subfield,
    repetition_code,
    rm_subfield_code,
    subfield_subcode,
)
from app.services.geometry import projective_points
from app.services.linalg import Matrix, rref
from app.utils.exceptions import CodeParameterError, GeometryParameterError


@pytest.mark.parametrize(
    "kind, q, s, t, n, dim",
    [
        ("affine", 2, 1, 3, 4, 3),
        ("affine", 3, 1, 3, 9, 3),
        ("affine", 4, 1, 2, 4, 2),
        ("affine", 2, 1, 4, 8, 4),
        ("projective", 3, 1, 3, 13, 3),
        ("unital", 2, 2, None, 9, 8),
        ("ovoid", 8, 1, None, 65, 4),
    ],
)
def test_family_code_shapes(kind, q, s, t, n, dim):
    code = family_code(kind, q, s, t)
    assert (code.n, code.dim) == (n, dim)
    assert code.q == q
    assert code.params["family"] == kind
    assert code.pointset.kind == kind


def test_generator_matrix_is_reduced(binary_hamming):
    reduced, _, _ = rref(binary_hamming.gen)
    assert reduced == binary_hamming.gen


def test_subfield_alphabet(gf4):
    code = family_code("unital", 2, 2)
    assert code.field == gf4
    assert code.alphabet == (0, 1)
    assert set(np.unique(code.gen.entries).tolist()) <= {0, 1}
    assert code.params["degree"] == 3


def test_reference_codes():
    hamming = hamming_code(3, 3)
    assert (hamming.n, hamming.dim) == (13, 10)
    assert hamming.params["family"] == "hamming"
    assert (grm_code(2, 1, 3).n, grm_code(2, 1, 3).dim) == (8, 4)
    rep = repetition_code(3, 5)
    assert (rep.n, rep.dim) == (5, 1)
    dual = even_weight_code(3, 4)
    assert (dual.n, dual.dim) == (4, 3)
    assert not np.any(dual.gen.entries.sum(axis=1) % 3)


@pytest.mark.parametrize(
    "q, s, degree, t, n, dim",
    [(2, 1, 1, 3, 7, 4), (3, 1, 2, 3, 13, 3), (2, 2, 3, 3, 21, 10), (3, 1, 3, 3, 13, 10)],
)
def test_projective_reed_muller(q, s, degree, t, n, dim):
    code = prm_subfield(q, s, degree, t)
    assert (code.n, code.dim) == (n, dim)
    assert code.params["family"] == "prm"


def test_prm_code_is_the_s1_case():
    assert prm_code(2, 1, 3).gen == prm_subfield(2, 1, 1, 3).gen


def test_subfield_subcodes():
    linear = rm_subfield_code(2, 2, 1, 2)
    assert (linear.n, linear.dim) == (16, 1)
    quadratic = rm_subfield_code(2, 2, 2, 2)
    assert (quadratic.n, quadratic.dim) == (16, 5)
    assert quadratic.params["subfield"] == 2
    assert subfield_subcode(grm_code(3, 1, 2), 3).gen == grm_code(3, 1, 2).gen


def test_bad_parameters(gf4):
    with pytest.raises(CodeParameterError):
        prm_subfield(2, 2, 2, 3)
    with pytest.raises(CodeParameterError):
        grm_code(2, 4, 3)
    with pytest.raises(CodeParameterError):
        even_weight_code(2, 1)
    with pytest.raises(CodeParameterError):
        hamming_code(2, 1)
    with pytest.raises(CodeParameterError):
        build_norm_twisted_code(3, 1, 3, 1, projective_points(gf4, 3))
    with pytest.raises(CodeParameterError):
        build_norm_twisted_code(2, 2, 2, 1, projective_points(gf4, 3, 2))
    with pytest.raises(CodeParameterError):
        build_norm_twisted_code(2, 2, 3, 1, projective_points(gf4, 3, 2), max_degree=1, min_degree=2)
    with pytest.raises(CodeParameterError):
        subfield_subcode(family_code("unital", 2, 2), 2)


def test_family_pointsets(gf4):
    assert FAMILY_DIMENSIONS == {"unital": 3, "ovoid": 4}
    assert family_pointset("unital", gf4, None, 2).n == 9
    assert family_pointset("unital", gf4, 3, 2).n == 9
    with pytest.raises(CodeParameterError):
        family_pointset("unital", gf4, 4, 2)
    with pytest.raises(CodeParameterError):
        family_pointset("projective", gf4, None)
    with pytest.raises(CodeParameterError):
        family_pointset("hyperoval", gf4, 3)
    with pytest.raises(GeometryParameterError):
        family_code("ovoid", 4)


def test_linear_code_validation(gf4, gf2):
    with pytest.raises(CodeParameterError):
        LinearCode(gf4, (0, 1), Matrix.from_rows(gf4, [[1, 2]]))
    with pytest.raises(CodeParameterError):
        LinearCode(gf2, (1,), Matrix.from_rows(gf2, [[1, 1]]))
    with pytest.raises(CodeParameterError):
        LinearCode(gf2, (0, 1), Matrix.from_rows(gf2, [[1, 1]]), projective_points(gf2, 3))


def test_index_conversion(gf4):
    code = LinearCode(gf4, range(4), Matrix.from_rows(gf4, [[1, 2, 3]]))
    assert code.q == 4
    assert code.to_indices(np.array([3, 2, 0])).tolist() == [3, 2, 0]
    assert code.from_indices(code.to_indices(np.array([1, 3]))).tolist() == [1, 3]
    assert code.size == 4
    assert not code.is_trivial
