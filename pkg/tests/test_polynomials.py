import numpy as np
import pytest

from app.services.geometry import projective_points
from app.services.polynomials import (
    Monomial,
    Polynomial,
    evaluate,
    evaluate_at,
    homogeneity_check,
    monomial_basis,
    normalise_twist,
    reduce_exponent,
    satisfies_degree_congruence,
    twist_degree,
)
from app.utils.exceptions import CodeParameterError, PolynomialArityError


def test_reduce_exponent():
    assert reduce_exponent(0, 4) == 0
    assert reduce_exponent(3, 4) == 3
    assert reduce_exponent(4, 4) == 1
    assert reduce_exponent(5, 4) == 2
    assert reduce_exponent(7, 4) == 1


def test_twists():
    assert twist_degree(2, 2, 1) == 3
    assert twist_degree(3, 2, 2) == 8
    assert normalise_twist(5, 6) == 2
    assert normalise_twist(5, 4) == 4
    assert normalise_twist(2, 5) == 1
    assert normalise_twist(2, 0) == 1


def test_monomial_basis_congruence():
    basis = monomial_basis(3, 1, 2, 1)
    assert basis == [Monomial((0, 1)), Monomial((1, 0)), Monomial((1, 2)), Monomial((2, 1))]
    capped = monomial_basis(2, 1, 3, 1, max_total_degree=1)
    assert len(capped) == 4
    homogeneous = monomial_basis(2, 2, 3, 1, max_total_degree=3, min_total_degree=3)
    assert all(m.degree == 3 for m in homogeneous)
    assert len(homogeneous) == 10


def test_monomial_basis_rejects_bad_twist():
    with pytest.raises(CodeParameterError):
        monomial_basis(3, 1, 2, 0)
    with pytest.raises(CodeParameterError):
        monomial_basis(3, 1, 2, 3)


def test_from_terms_reduces_and_merges(gf4):
    # x^4 and x are the same function on GF(4)
    f = Polynomial.from_terms(gf4, 1, {(4,): 1, (1,): 1})
    assert f.is_zero()
    g = Polynomial.from_terms(gf4, 2, {(1, 0): 2, (0, 1): 3})
    assert g.degrees() == [1, 1]
    with pytest.raises(PolynomialArityError):
        Polynomial.from_terms(gf4, 2, {(1,): 1})


def test_polynomial_arithmetic(gf3):
    x = Polynomial.monomial(gf3, (1, 0))
    y = Polynomial.monomial(gf3, (0, 1))
    assert (x + x + x).is_zero()
    assert (x + y).scale(2) == Polynomial.from_terms(gf3, 2, {(1, 0): 2, (0, 1): 2})
    assert x.scale(0).is_zero()


def test_evaluate_on_points(gf2):
    line = projective_points(gf2, 2)
    f = Polynomial.from_terms(gf2, 2, {(1, 0): 1, (0, 1): 1})
    assert [p.coords for p in line.points] == [(0, 1), (1, 0), (1, 1)]
    assert evaluate(f, line).tolist() == [1, 1, 0]
    with pytest.raises(PolynomialArityError):
        evaluate_at(f, np.zeros((2, 3), dtype=np.int64))


def test_constant_one_at_origin(gf3):
    one = Polynomial.monomial(gf3, (0, 0))
    assert evaluate_at(one, np.zeros((1, 2), dtype=np.int64)).tolist() == [1]


def test_homogeneity(gf3, gf4):
    x = Polynomial.monomial(gf3, (1, 0))
    assert homogeneity_check(x, 1, 1)
    assert not homogeneity_check(x, 2, 1)
    cube = Polynomial.monomial(gf4, (3, 0, 0))
    assert homogeneity_check(cube, 1, 2)
    assert satisfies_degree_congruence(cube, 2, 2, 1)
    mixed = Polynomial.from_terms(gf4, 3, {(1, 1, 1): 1, (1, 0, 0): 1})
    assert not satisfies_degree_congruence(mixed, 2, 2, 1)
    assert not homogeneity_check(mixed, 1, 2)
