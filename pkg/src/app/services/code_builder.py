"""
Construction of the norm-twisted polynomial evaluation codes, the Reed-Muller
families and a few reference codes, as row spaces in RREF.

Codes over GF(q) built from polynomials over GF(q^s) keep the ambient field
GF(q^s): the symbols are the encodings of the subfield elements (the code's
alphabet), so no re-encoding into a separate GF(q) is needed.
"""

import itertools
from dataclasses import dataclass, field as dataclass_field
from typing import Optional, Tuple

import numpy as np

from app.schemas.reports import BoundedValue
from app.services.build_timed_logger import construction_logger
from app.services.finite_field import Field, field_of_size, prime_power
from app.services.geometry import (
    PointSet,
    affine_points,
    affine_space,
    hermitian_unital,
    projective_points,
    suzuki_ovoid,
)
from app.services.linalg import Matrix, left_kernel_basis, matmul, restrict_scalars, rref
from app.services.polynomials import (
    Monomial,
    evaluate_monomials,
    monomial_basis,
    normalise_twist,
    twist_degree,
)
from app.utils.exceptions import CodeParameterError
from app.utils.log_templates import log_event


@dataclass
class LinearCode:
    """
    Linear code over the alphabet GF(q) inside `field`.

    gen is in RREF with independent rows; min_distance and covering_radius are
    filled in by code analysis.
    """

    field: Field
    alphabet: Tuple[int, ...]
    gen: Matrix
    pointset: Optional[PointSet] = None
    name: str = ""
    params: dict = dataclass_field(default_factory=dict)
    min_distance: Optional[BoundedValue] = None
    covering_radius: Optional[BoundedValue] = None

    def __post_init__(self):
        self.alphabet = tuple(sorted(int(a) for a in self.alphabet))
        if self.alphabet[0] != 0:
            raise CodeParameterError("the alphabet must contain zero")
        lookup = np.full(self.field.size, -1, dtype=np.int64)
        lookup[list(self.alphabet)] = np.arange(len(self.alphabet))
        self._alphabet_index = lookup
        if self.gen.rows and np.any(lookup[self.gen.entries] < 0):
            raise CodeParameterError(f"generator matrix of {self.name or 'code'} leaves the alphabet")
        if self.pointset is not None and self.pointset.n != self.gen.cols:
            raise CodeParameterError(
                f"point set has {self.pointset.n} points but the code has length {self.gen.cols}"
            )

    @property
    def q(self) -> int:
        return len(self.alphabet)

    @property
    def n(self) -> int:
        return self.gen.cols

    @property
    def dim(self) -> int:
        return self.gen.rows

    @property
    def size(self) -> int:
        return self.q**self.dim

    @property
    def is_trivial(self) -> bool:
        return self.dim == 0 or self.dim == self.n

    def to_indices(self, words: np.ndarray) -> np.ndarray:
        """Field encodings -> alphabet positions 0..q-1"""
        return self._alphabet_index[np.asarray(words, dtype=np.int64)]

    def from_indices(self, words: np.ndarray) -> np.ndarray:
        return np.asarray(self.alphabet, dtype=np.int64)[np.asarray(words, dtype=np.int64)]

    def describe(self) -> dict:
        return {"name": self.name, "q": self.q, "n": self.n, "dim": self.dim, **self.params}


def _make_code(field: Field, alphabet, rows: Matrix, pointset, name, params) -> LinearCode:
    reduced, _, _ = rref(rows)
    code = LinearCode(field, tuple(alphabet), reduced, pointset, name, params)
    log_event(construction_logger, "construct", params, name=name, n=code.n, dim=code.dim)
    return code


def _subfield_span(field: Field, rows: np.ndarray, s: int) -> np.ndarray:
    """g^j * row for j < s: spans the GF(q^s)-span of rows over GF(q)"""
    return np.concatenate([field.mul_vec(rows, field.pow(field.generator, j)) for j in range(s)])


def _subfield_valued_combinations(field: Field, spanning: np.ndarray, s: int) -> Matrix:
    """Basis of the GF(q)-combinations c with c @ spanning in GF(q) at every column"""
    coords = restrict_scalars(Matrix(field, spanning), s).entries
    coords = coords.reshape(spanning.shape[0], spanning.shape[1], s)[:, :, 1:]
    conditions = Matrix(field, coords.reshape(spanning.shape[0], -1))
    return left_kernel_basis(conditions)


def build_norm_twisted_code(
    q: int,
    s: int,
    t: int,
    k: int,
    pointset: PointSet,
    max_degree: Optional[int] = None,
    min_degree: int = 0,
    full_space: bool = False,
) -> LinearCode:
    """
    Evaluation code in H(N, GF(q)) of the GF(q)-valued polynomials over GF(q^s)
    whose monomials have degree congruent to k (q^s - 1)/(q - 1) modulo q^s - 1,
    optionally restricted to degrees in [min_degree, max_degree].

    GF(q)-valuedness is imposed at the projective points and the origin, or at
    every vector of GF(q^s)^t with full_space.
    """
    field = pointset.field
    if field.size != q**s:
        raise CodeParameterError(f"point set over {field} does not match q^s = {q}^{s}")
    if pointset.t != t:
        raise CodeParameterError(f"point set has dimension {pointset.t}, not {t}")
    if max_degree is not None and max_degree < min_degree:
        raise CodeParameterError(f"degree range [{min_degree}, {max_degree}] is empty")
    k = normalise_twist(q, k)
    params = {
        "q": q,
        "s": s,
        "t": t,
        "k": k,
        "kind": pointset.kind,
        "max_degree": max_degree,
        "min_degree": min_degree,
    }
    name = f"R({q},{s},{t},{k}) on {pointset.kind}"
    alphabet = field.subfield_elements(s)

    monomials = monomial_basis(q, s, t, k, max_degree, min_degree)
    if not monomials:
        return _make_code(field, alphabet, Matrix.zeros(field, 0, pointset.n), pointset, name, params)
    on_pointset = evaluate_monomials(field, monomials, pointset.array)
    if s == 1:
        return _make_code(field, alphabet, Matrix(field, on_pointset), pointset, name, params)

    if full_space:
        conditioned = affine_space(field, t).array
    else:
        conditioned = np.concatenate([projective_points(field, t).array, np.zeros((1, t), dtype=np.int64)])
    spanning = _subfield_span(field, evaluate_monomials(field, monomials, conditioned), s)
    combinations = _subfield_valued_combinations(field, spanning, s)
    survivors = matmul(combinations, Matrix(field, _subfield_span(field, on_pointset, s)))
    return _make_code(field, alphabet, survivors, pointset, name, params)


def reed_muller_monomials(q: int, degree: int, t: int):
    """Exponent tuples in [0, q-1]^t of total degree at most `degree`"""
    return [Monomial(e) for e in itertools.product(range(q), repeat=t) if sum(e) <= degree]


def grm_code(q: int, degree: int, t: int) -> LinearCode:
    """Generalised Reed-Muller code RM_q(degree, t) on all of GF(q)^t"""
    if not 0 <= degree <= t * (q - 1):
        raise CodeParameterError(f"Reed-Muller degree {degree} outside 0..{t * (q - 1)}")
    field = field_of_size(q)
    space = affine_space(field, t)
    rows = evaluate_monomials(field, reed_muller_monomials(q, degree, t), space.array)
    return _make_code(
        field, range(q), Matrix(field, rows), space, f"RM_{q}({degree},{t})",
        {"family": "grm", "q": q, "l": degree, "t": t},
    )


def subfield_subcode(parent: LinearCode, q: int) -> LinearCode:
    """Codewords of the parent (over GF(q^s)) whose coordinates all lie in GF(q)"""
    field = parent.field
    if parent.q != field.size:
        raise CodeParameterError("the parent code must use the whole field as its alphabet")
    p, d = prime_power(q)
    if p != field.p or field.d % d != 0:
        raise CodeParameterError(f"GF({q}) is not a subfield of {field}")
    s = field.d // d
    params = {**parent.params, "subfield": q, "s": s}
    name = f"{parent.name}|GF({q})"
    if s == 1:
        return LinearCode(field, parent.alphabet, parent.gen, parent.pointset, name, params)
    if parent.dim == 0:
        return _make_code(field, field.subfield_elements(s), parent.gen, parent.pointset, name, params)
    spanning = _subfield_span(field, parent.gen.entries, s)
    combinations = _subfield_valued_combinations(field, spanning, s)
    survivors = matmul(combinations, Matrix(field, spanning))
    return _make_code(field, field.subfield_elements(s), survivors, parent.pointset, name, params)


def rm_subfield_code(q: int, s: int, degree: int, t: int) -> LinearCode:
    """RM_(q^s/q)(degree, t)"""
    return subfield_subcode(grm_code(q**s, degree, t), q)


def prm_code(q: int, degree: int, t: int, k: int = 1) -> LinearCode:
    """Projective Reed-Muller code PRM_q(degree, t): degree capped code on PG_(t-1)(q)"""
    return prm_subfield(q, 1, degree, t, k)


def prm_subfield(q: int, s: int, degree: int, t: int, k: int = 1) -> LinearCode:
    """PRM_(q^s/q)(degree, t): GF(q)-valued degree capped code on PG_(t-1)(q^s)"""
    k = normalise_twist(q, k)
    step = twist_degree(q, s, k)
    if degree < 0 or degree % step != 0:
        raise CodeParameterError(f"degree {degree} is not a multiple of {step}")
    field = field_of_size(q**s)
    code = build_norm_twisted_code(q, s, t, k, projective_points(field, t, s), max_degree=degree)
    code.name = f"PRM_{q if s == 1 else f'{q**s}/{q}'}({degree},{t})"
    code.params["family"] = "prm"
    return code


def hamming_code(q: int, t: int) -> LinearCode:
    """
    Perfect Hamming code as a norm-twisted code: twist q-2 (taken modulo q-1)
    and degrees up to (t-1)(q-1)-1 on PG_(t-1)(q)
    """
    if t < 2:
        raise CodeParameterError(f"Hamming codes need t >= 2, got {t}")
    field = field_of_size(q)
    code = build_norm_twisted_code(
        q, 1, t, q - 2, projective_points(field, t), max_degree=(t - 1) * (q - 1) - 1
    )
    code.name = f"Hamming({q},{t})"
    code.params["family"] = "hamming"
    return code


def repetition_code(q: int, n: int) -> LinearCode:
    field = field_of_size(q)
    return _make_code(
        field, range(q), Matrix(field, np.ones((1, n), dtype=np.int64)), None,
        f"Rep_{q}({n})", {"family": "repetition", "q": q, "n": n},
    )


def even_weight_code(q: int, n: int) -> LinearCode:
    """Dual of the repetition code: coordinates summing to zero"""
    if n < 2:
        raise CodeParameterError(f"length {n} too short for the dual repetition code")
    field = field_of_size(q)
    rows = np.zeros((n - 1, n), dtype=np.int64)
    rows[:, : n - 1] = np.eye(n - 1, dtype=np.int64)
    rows[:, n - 1] = field.neg(1)
    return _make_code(
        field, range(q), Matrix(field, rows), None,
        f"Rep_{q}({n})^perp", {"family": "dual-repetition", "q": q, "n": n},
    )


# Projective dimension of the point set families with a fixed ambient space
FAMILY_DIMENSIONS = {"unital": 3, "ovoid": 4}


def family_pointset(kind: str, field: Field, t: Optional[int], s: int = 1) -> PointSet:
    fixed = FAMILY_DIMENSIONS.get(kind)
    if fixed is not None and t not in (None, fixed):
        raise CodeParameterError(f"the {kind} family lives in dimension {fixed}, not {t}")
    if fixed is None and t is None:
        raise CodeParameterError(f"the {kind} family needs a dimension t")
    if kind == "projective":
        return projective_points(field, t, s)
    if kind == "affine":
        return affine_points(field, t, s)
    if kind == "unital":
        return hermitian_unital(field, s)
    if kind == "ovoid":
        return suzuki_ovoid(field, s)
    raise CodeParameterError(f"unknown point set family '{kind}'")


def family_code(
    kind: str, q: int, s: int = 1, t: Optional[int] = None, k: int = 1, degree: Optional[int] = None
) -> LinearCode:
    """
    Homogeneous code of one family: GF(q)-valued polynomials of degree exactly
    `degree` (default k (q^s - 1)/(q - 1)) on the family's point set.
    """
    field = field_of_size(q**s)
    pointset = family_pointset(kind, field, t, s)
    k = normalise_twist(q, k)
    degree = twist_degree(q, s, k) if degree is None else degree
    code = build_norm_twisted_code(q, s, pointset.t, k, pointset, max_degree=degree, min_degree=degree)
    code.params["family"] = kind
    code.params["degree"] = degree
    return code
