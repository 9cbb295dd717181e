"""
Point sets of projective space used as coordinate sets of the Hamming graph.

Points are canonical representatives of 1-dimensional subspaces (first nonzero
coordinate equal to 1), stored as tuples of element encodings and ordered
lexicographically.
"""

import itertools
from dataclasses import dataclass, field as dataclass_field
from typing import Dict, List, NamedTuple, Sequence, Tuple

import numpy as np

from app.services.classical_groups import hermitian_root, suzuki_exponent, sz_matrices
from app.services.finite_field import Field
from app.services.linalg import Matrix
from app.utils.exceptions import (
    GeneratorValidationError,
    GeometryParameterError,
    PointSetEscapeError,
)

POINTSET_KINDS = ("projective", "affine", "unital", "ovoid", "space")


class ProjPoint(NamedTuple):
    coords: Tuple[int, ...]


def canonical_rep(field: Field, v: Sequence[int]) -> Tuple[ProjPoint, int]:
    """(w, lam) with v = lam * w and the first nonzero coordinate of w equal to 1"""
    lead = next((int(x) for x in v if x != 0), 0)
    if lead == 0:
        raise GeometryParameterError("the zero vector has no projective representative")
    lead_inv = field.inv(lead)
    return ProjPoint(tuple(field.mul(int(x), lead_inv) for x in v)), lead


def canonicalize_rows(field: Field, vectors: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Vectorised canonical_rep over the rows of a 2-d array of nonzero vectors"""
    vectors = np.asarray(vectors, dtype=np.int64)
    nonzero = vectors != 0
    if not nonzero.any(axis=1).all():
        raise GeometryParameterError("the zero vector has no projective representative")
    lead = vectors[np.arange(len(vectors)), nonzero.argmax(axis=1)]
    canonical = field.mul_vec(vectors, field.inv_vec(lead)[:, None])
    return canonical, lead


@dataclass
class PointSet:
    """
    Ordered coordinate set N of a Hamming graph.

    s is the degree of the field over the subfield GF(q) of code symbols; the
    "space" kind is the full vector space GF(q)^t (zero included), used by
    generalised Reed-Muller codes.
    """

    field: Field
    t: int
    kind: str
    points: List[ProjPoint]
    s: int = 1
    index: Dict[Tuple[int, ...], int] = dataclass_field(default_factory=dict, repr=False)

    def __post_init__(self):
        if self.kind not in POINTSET_KINDS:
            raise GeometryParameterError(f"unknown point set kind '{self.kind}'")
        self.field.subfield_size(self.s)
        self.points = sorted(ProjPoint(tuple(int(x) for x in p.coords)) for p in self.points)
        self.index = {p.coords: i for i, p in enumerate(self.points)}
        if len(self.index) != len(self.points):
            raise GeometryParameterError("point set contains repeated points")
        self._array = np.array([p.coords for p in self.points], dtype=np.int64).reshape(-1, self.t)
        self._keys = self._encode(self._array)

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def q(self) -> int:
        return self.field.subfield_size(self.s)

    @property
    def array(self) -> np.ndarray:
        return self._array

    def _encode(self, vectors: np.ndarray) -> np.ndarray:
        """Lexicographic integer keys, so sorted points have sorted keys"""
        keys = np.zeros(len(vectors), dtype=object if self.field.size**self.t >= 2**62 else np.int64)
        for j in range(self.t):
            keys = keys * self.field.size + vectors[:, j]
        return keys

    def position(self, v: Sequence[int]) -> int:
        key = tuple(int(x) for x in v)
        if key not in self.index:
            raise PointSetEscapeError(f"{key} is not a point of the {self.kind} point set")
        return self.index[key]

    def positions(self, vectors: np.ndarray) -> np.ndarray:
        """Vectorised position lookup of canonical vectors"""
        keys = self._encode(np.asarray(vectors, dtype=np.int64))
        found = np.searchsorted(self._keys, keys)
        found = np.minimum(found, self.n - 1)
        missing = self._keys[found] != keys
        if np.any(missing):
            bad = np.asarray(vectors)[np.argmax(missing)]
            raise PointSetEscapeError(f"{tuple(int(x) for x in bad)} is not a point of the {self.kind} point set")
        return found.astype(np.int64)

    def header(self) -> str:
        return f"{self.kind} {self.q} {self.s} {self.t} {self.n}"


def projective_points(field: Field, t: int, s: int = 1) -> PointSet:
    if t < 2:
        raise GeometryParameterError(f"projective dimension needs t >= 2, got {t}")
    points = []
    for lead in range(t):
        for tail in itertools.product(range(field.size), repeat=t - lead - 1):
            points.append(ProjPoint((0,) * lead + (1,) + tail))
    pointset = PointSet(field, t, "projective", points, s)
    _check_size(pointset, (field.size**t - 1) // (field.size - 1))
    return pointset


def affine_points(field: Field, t: int, s: int = 1) -> PointSet:
    if t < 2:
        raise GeometryParameterError(f"affine points need t >= 2, got {t}")
    points = [ProjPoint((1,) + tail) for tail in itertools.product(range(field.size), repeat=t - 1)]
    pointset = PointSet(field, t, "affine", points, s)
    _check_size(pointset, field.size ** (t - 1))
    return pointset


def affine_space(field: Field, t: int) -> PointSet:
    """All of field^t, zero vector first"""
    if t < 1:
        raise GeometryParameterError(f"affine space needs t >= 1, got {t}")
    points = [ProjPoint(v) for v in itertools.product(range(field.size), repeat=t)]
    return PointSet(field, t, "space", points)


def hermitian_form(field: Field, x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """h(x, y) = x1 y3^sigma + x2 y2^sigma + x3 y1^sigma on the last axis"""
    r = hermitian_root(field)
    x = np.asarray(x, dtype=np.int64)
    y = np.asarray(y, dtype=np.int64)
    ys = field.pow_vec(y, r)
    terms = field.mul_vec(x, ys[..., ::-1])
    return field.add_vec(field.add_vec(terms[..., 0], terms[..., 1]), terms[..., 2])


def hermitian_unital(field: Field, s: int = 2) -> PointSet:
    """Isotropic points of the antidiagonal Hermitian form in PG_2(field)"""
    hermitian_root(field)
    if s % 2 != 0:
        raise GeometryParameterError(f"the unital needs an even s, got {s}")
    plane = projective_points(field, 3, s)
    isotropic = hermitian_form(field, plane.array, plane.array) == 0
    pointset = PointSet(field, 3, "unital", [plane.points[i] for i in np.nonzero(isotropic)[0]], s)
    _check_size(pointset, round(field.size**1.5) + 1)
    return pointset


def projective_orbit(field: Field, matrices: Sequence[Matrix], seed: Sequence[int]) -> List[ProjPoint]:
    """Orbit of <seed> under v -> v M, breadth first, canonical representatives"""
    start = canonical_rep(field, seed)[0]
    seen = {start.coords}
    frontier = np.array([start.coords], dtype=np.int64)
    while len(frontier):
        images = []
        for m in matrices:
            moved = np.zeros_like(frontier)
            for k in range(len(seed)):
                moved = field.add_vec(moved, field.mul_vec(frontier[:, k : k + 1], m.entries[k][None, :]))
            images.append(canonicalize_rows(field, moved)[0])
        fresh = []
        for row in np.concatenate(images):
            key = tuple(int(x) for x in row)
            if key not in seen:
                seen.add(key)
                fresh.append(key)
        frontier = np.array(fresh, dtype=np.int64).reshape(-1, len(seed))
    return [ProjPoint(c) for c in seen]


def suzuki_ovoid(field: Field, s: int = 1) -> PointSet:
    """Orbit of e1 = (1, 0, 0, 0) under the Suzuki group generators"""
    suzuki_exponent(field)
    orbit = projective_orbit(field, sz_matrices(field), (1, 0, 0, 0))
    expected = field.size**2 + 1
    if len(orbit) != expected:
        raise GeneratorValidationError(
            f"Suzuki orbit of e1 has {len(orbit)} points, expected {expected}"
        )
    return PointSet(field, 4, "ovoid", orbit, s)


def max_line_intersection(pointset: PointSet) -> int:
    """Largest number of points of the set on a single projective line"""
    field = pointset.field
    scalars = np.arange(field.size, dtype=np.int64)
    best = min(pointset.n, 2)
    for i, j in itertools.combinations(range(pointset.n), 2):
        u = pointset.array[i]
        v = pointset.array[j]
        # <v> together with a u + v for every scalar a covers the line
        line = canonicalize_rows(field, field.add_vec(field.mul_vec(scalars[:, None], u[None, :]), v[None, :]))[0]
        keys = pointset._encode(line)
        on_set = np.isin(keys, pointset._keys).sum() + 1
        best = max(best, int(on_set))
    return best


def _check_size(pointset: PointSet, expected: int):
    if pointset.n != expected:
        raise GeometryParameterError(
            f"{pointset.kind} point set has {pointset.n} points, expected {expected}"
        )
