"""
Multivariate polynomials over GF(q^s) with reduced exponents, evaluated on point sets.
"""

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, NamedTuple, Optional, Tuple

import numpy as np

from app.services.finite_field import Field
from app.services.geometry import PointSet
from app.utils.exceptions import CodeParameterError, PolynomialArityError
from settings import settings


class Monomial(NamedTuple):
    exponents: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)


def reduce_exponent(e: int, field_size: int) -> int:
    """x^e as a function on the field: 0 stays 0, otherwise e -> 1 + (e - 1) mod (Q - 1)"""
    if e <= field_size - 1:
        return e
    return 1 + (e - 1) % (field_size - 1)


def twist_degree(q: int, s: int, k: int) -> int:
    """k (q^s - 1)/(q - 1), the degree every monomial is congruent to"""
    return k * (q**s - 1) // (q - 1)


def normalise_twist(q: int, k: int) -> int:
    """k modulo q - 1, written in 1..q-1"""
    return (k - 1) % (q - 1) + 1


@dataclass(frozen=True)
class Polynomial:
    field: Field
    t: int
    terms: Tuple[Tuple[Monomial, int], ...] = ()

    @classmethod
    def from_terms(cls, field: Field, t: int, terms: Dict[Tuple[int, ...], int]) -> "Polynomial":
        combined: Dict[Monomial, int] = {}
        for exponents, coefficient in terms.items():
            if len(exponents) != t:
                raise PolynomialArityError(f"monomial {exponents} does not have {t} variables")
            mono = Monomial(tuple(reduce_exponent(e, field.size) for e in exponents))
            combined[mono] = field.add(combined.get(mono, 0), field.check_element(coefficient))
        return cls(field, t, tuple(sorted((m, c) for m, c in combined.items() if c != 0)))

    @classmethod
    def monomial(cls, field: Field, exponents: Tuple[int, ...], coefficient: int = 1) -> "Polynomial":
        return cls.from_terms(field, len(exponents), {tuple(exponents): coefficient})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Polynomial") -> "Polynomial":
        merged: Dict[Tuple[int, ...], int] = {m.exponents: c for m, c in self.terms}
        for m, c in other.terms:
            merged[m.exponents] = self.field.add(merged.get(m.exponents, 0), c)
        return Polynomial.from_terms(self.field, self.t, merged)

    def scale(self, c: int) -> "Polynomial":
        return Polynomial.from_terms(
            self.field, self.t, {m.exponents: self.field.mul(c, v) for m, v in self.terms}
        )

    def degrees(self) -> List[int]:
        return [m.degree for m, _ in self.terms]


def evaluate_monomials(field: Field, monomials: Iterable[Monomial], vectors: np.ndarray) -> np.ndarray:
    """Row i holds monomial i evaluated at every row of vectors (0^0 = 1)"""
    vectors = np.asarray(vectors, dtype=np.int64)
    rows = []
    for mono in monomials:
        value = np.ones(vectors.shape[:-1], dtype=np.int64)
        for j, e in enumerate(mono.exponents):
            if e:
                value = field.mul_vec(value, field.pow_vec(vectors[..., j], e))
        rows.append(value)
    if not rows:
        return np.zeros((0,) + vectors.shape[:-1], dtype=np.int64)
    return np.stack(rows)


def evaluate_at(f: Polynomial, vectors: np.ndarray) -> np.ndarray:
    vectors = np.asarray(vectors, dtype=np.int64)
    if vectors.shape[-1] != f.t:
        raise PolynomialArityError(f"polynomial in {f.t} variables evaluated at {vectors.shape[-1]}-vectors")
    field = f.field
    result = np.zeros(vectors.shape[:-1], dtype=np.int64)
    if f.is_zero():
        return result
    values = evaluate_monomials(field, [m for m, _ in f.terms], vectors)
    for (_, c), row in zip(f.terms, values):
        result = field.add_vec(result, field.mul_vec(row, c))
    return result


def evaluate(f: Polynomial, pointset: PointSet) -> np.ndarray:
    """Word of length n: f at each canonical point of the set"""
    if f.field != pointset.field or f.t != pointset.t:
        raise PolynomialArityError(
            f"polynomial over {f.field} in {f.t} variables does not fit a point set over {pointset.field} with t={pointset.t}"
        )
    return evaluate_at(f, pointset.array)


def homogeneity_check(
    f: Polynomial, k: int, s: int, points: Optional[np.ndarray] = None
) -> bool:
    """
    f(a v) == norm(a)^k f(v) for every nonzero scalar a and every v in the
    sample. Without explicit points the whole space is used when it has at most
    settings.sample_size vectors, otherwise settings.homogeneity_sample random ones.
    """
    field = f.field
    if f.is_zero():
        return True
    if points is None:
        if field.size**f.t <= settings.sample_size:
            points = np.array(list(itertools.product(range(field.size), repeat=f.t)), dtype=np.int64)
        else:
            rng = np.random.default_rng(settings.sample_seed)
            points = rng.integers(0, field.size, size=(settings.homogeneity_sample, f.t))
    points = np.asarray(points, dtype=np.int64)
    scalars = np.arange(1, field.size, dtype=np.int64)
    factors = field.pow_vec(field.pow_vec(scalars, (field.size - 1) // (field.subfield_size(s) - 1)), k)
    scaled = field.mul_vec(scalars[:, None, None], points[None, :, :])
    lhs = evaluate_at(f, scaled)
    rhs = field.mul_vec(factors[:, None], evaluate_at(f, points)[None, :])
    return bool(np.array_equal(lhs, rhs))


def satisfies_degree_congruence(f: Polynomial, q: int, s: int, k: int) -> bool:
    modulus = q**s - 1
    target = twist_degree(q, s, k) % modulus
    return all(deg % modulus == target for deg in f.degrees())


def monomial_basis(
    q: int,
    s: int,
    t: int,
    k: int,
    max_total_degree: Optional[int] = None,
    min_total_degree: int = 0,
) -> List[Monomial]:
    """
    Reduced monomials in t variables over GF(q^s) whose total degree is
    congruent to k (q^s - 1)/(q - 1) modulo q^s - 1 and lies in
    [min_total_degree, max_total_degree] (default cap t (q^s - 1)).
    Lexicographic order of exponent tuples.
    """
    if not 0 < k <= q - 1:
        raise CodeParameterError(f"twist k={k} must lie in 1..{q - 1}")
    field_size = q**s
    modulus = field_size - 1
    if max_total_degree is None:
        max_total_degree = t * modulus
    target = twist_degree(q, s, k) % modulus
    basis = []
    for exponents in itertools.product(range(field_size), repeat=t):
        degree = sum(exponents)
        if min_total_degree <= degree <= max_total_degree and degree % modulus == target:
            basis.append(Monomial(exponents))
    return basis
