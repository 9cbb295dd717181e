"""
Automorphisms of the Hamming graph H(n, q) and the generator sets induced by
the matrix groups acting on the point sets.

An automorphism is a coordinate permutation sigma together with a permutation
alpha[j] of the alphabet for every coordinate j; the image of a vertex v has
alpha[j][v[j]] at coordinate sigma[j]. Vertices are rows of alphabet positions.
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Callable, Dict, List, Optional, Sequence

import numpy as np

from app.services.build_timed_logger import construction_logger
from app.services.classical_groups import (
    additive_basis,
    agl_matrices,
    gl_matrices,
    gu3_matrices,
    suzuki_exponent,
    sz_matrices,
)
from app.services.finite_field import Field, field_of_size
from app.services.geometry import (
    PointSet,
    affine_points,
    affine_space,
    canonicalize_rows,
    hermitian_unital,
    projective_points,
    suzuki_ovoid,
)
from app.services.linalg import Matrix, inverse, matmul
from app.utils.exceptions import (
    AutomorphismMismatchError,
    DomainEscapeError,
    GeneratorValidationError,
    GeometryParameterError,
)
from app.utils.log_templates import log_event


class Alphabet:
    """GF(q) as the subfield of `field` fixed by s, with its elements numbered 0..q-1"""

    def __init__(self, field: Field, s: int = 1):
        self.field = field
        self.s = s
        self.elements = np.asarray(field.subfield_elements(s), dtype=np.int64)
        self.q = len(self.elements)
        self._index = np.full(field.size, -1, dtype=np.int64)
        self._index[self.elements] = np.arange(self.q)
        self.mul_table = self._index[field.mul_vec(self.elements[:, None], self.elements[None, :])]
        self.add_table = self._index[field.add_vec(self.elements[:, None], self.elements[None, :])]

    def index(self, values) -> np.ndarray:
        idx = self._index[np.asarray(values, dtype=np.int64)]
        if np.any(idx < 0):
            raise AutomorphismMismatchError(f"value outside GF({self.q}) inside {self.field}")
        return idx

    def generator_index(self) -> int:
        return int(self.index(self.field.subfield_generator(self.s)))

    @classmethod
    def of_size(cls, q: int) -> "Alphabet":
        return cls(field_of_size(q), 1)


@dataclass(frozen=True, eq=False)
class HammingAutomorphism:
    sigma: np.ndarray
    alpha: np.ndarray

    def __post_init__(self):
        sigma = np.array(self.sigma, dtype=np.int64, copy=True)
        alpha = np.array(self.alpha, dtype=np.int64, copy=True)
        n = len(sigma)
        if alpha.ndim != 2 or alpha.shape[0] != n:
            raise AutomorphismMismatchError(f"need one alphabet map per coordinate, got shape {alpha.shape}")
        if sorted(sigma.tolist()) != list(range(n)):
            raise AutomorphismMismatchError("sigma is not a permutation of the coordinates")
        q = alpha.shape[1]
        if n and not np.array_equal(np.sort(alpha, axis=1), np.tile(np.arange(q), (n, 1))):
            raise AutomorphismMismatchError("an alphabet map is not a permutation")
        sigma.setflags(write=False)
        alpha.setflags(write=False)
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "alpha", alpha)

    @property
    def n(self) -> int:
        return len(self.sigma)

    @property
    def q(self) -> int:
        return self.alpha.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, HammingAutomorphism)
            and np.array_equal(self.sigma, other.sigma)
            and np.array_equal(self.alpha, other.alpha)
        )

    def __hash__(self):
        return hash((self.sigma.tobytes(), self.alpha.tobytes()))

    def is_identity(self) -> bool:
        return bool(
            np.array_equal(self.sigma, np.arange(self.n))
            and np.array_equal(self.alpha, np.tile(np.arange(self.q), (self.n, 1)))
        )

    def fixes_zero(self) -> bool:
        return bool(np.all(self.alpha[:, 0] == 0))

    def export(self) -> dict:
        """One-line notation of sigma plus the alphabet tables"""
        return {"sigma": self.sigma.tolist(), "alpha": self.alpha.tolist()}


def identity_automorphism(n: int, q: int) -> HammingAutomorphism:
    return HammingAutomorphism(np.arange(n), np.tile(np.arange(q), (n, 1)))


def _check_compatible(g: HammingAutomorphism, h: HammingAutomorphism):
    if g.n != h.n or g.q != h.q:
        raise AutomorphismMismatchError(f"H({g.n},{g.q}) and H({h.n},{h.q}) automorphisms do not compose")


def apply_array(g: HammingAutomorphism, vertices: np.ndarray) -> np.ndarray:
    vertices = np.asarray(vertices)
    if vertices.shape[-1] != g.n:
        raise AutomorphismMismatchError(f"vertices of length {vertices.shape[-1]} in H({g.n},{g.q})")
    out = np.empty_like(vertices)
    out[..., g.sigma] = g.alpha[np.arange(g.n), vertices.astype(np.int64)].astype(vertices.dtype)
    return out


def apply(g: HammingAutomorphism, v: Sequence[int]) -> tuple:
    return tuple(int(x) for x in apply_array(g, np.asarray(v, dtype=np.int64)[None, :])[0])


def compose(g: HammingAutomorphism, h: HammingAutomorphism) -> HammingAutomorphism:
    """g first, then h"""
    _check_compatible(g, h)
    sigma = h.sigma[g.sigma]
    alpha = h.alpha[g.sigma[:, None], g.alpha]
    return HammingAutomorphism(sigma, alpha)


def invert(g: HammingAutomorphism) -> HammingAutomorphism:
    sigma = np.empty_like(g.sigma)
    sigma[g.sigma] = np.arange(g.n)
    alpha = np.empty_like(g.alpha)
    rows = np.repeat(g.sigma[:, None], g.q, axis=1)
    alpha[rows, g.alpha] = np.tile(np.arange(g.q), (g.n, 1))
    return HammingAutomorphism(sigma, alpha)


def induce_from_matrix(g: Matrix, k: int, pointset: PointSet, alphabet: Optional[Alphabet] = None) -> HammingAutomorphism:
    """
    Automorphism of H(P, GF(q)) induced by f -> f(x g^-1). For every point v_i,
    v_i g^-1 = lam v_j; coordinate j moves to i and its symbol is multiplied
    by norm(lam)^k.
    """
    field = pointset.field
    alphabet = alphabet or Alphabet(field, pointset.s)
    images = matmul(Matrix(field, pointset.array), inverse(g)).entries
    canonical, lam = canonicalize_rows(field, images)
    sources = pointset.positions(canonical)
    norm_exponent = (field.size - 1) // (alphabet.q - 1)
    scalars = alphabet.index(field.pow_vec(field.pow_vec(lam, norm_exponent), k))
    sigma = np.empty(pointset.n, dtype=np.int64)
    sigma[sources] = np.arange(pointset.n)
    alpha = np.empty((pointset.n, alphabet.q), dtype=np.int64)
    alpha[sources] = alphabet.mul_table[scalars]
    return HammingAutomorphism(sigma, alpha)


def scalar_diag_generator(q: int, n: int, alphabet: Optional[Alphabet] = None) -> HammingAutomorphism:
    """Multiplication of every coordinate by a generator of GF(q)^x"""
    alphabet = alphabet or Alphabet.of_size(q)
    if alphabet.q != q:
        raise AutomorphismMismatchError(f"alphabet of size {alphabet.q} for q={q}")
    row = alphabet.mul_table[alphabet.generator_index()]
    return HammingAutomorphism(np.arange(n), np.tile(row, (n, 1)))


def coordinate_permutation(perm: Sequence[int], q: int) -> HammingAutomorphism:
    n = len(perm)
    return HammingAutomorphism(np.asarray(perm), np.tile(np.arange(q), (n, 1)))


def symmetric_group_generators(q: int, n: int) -> List[HammingAutomorphism]:
    """Transposition (0 1) and the n-cycle, acting on coordinates only"""
    if n < 2:
        return [identity_automorphism(n, q)]
    swap = list(range(n))
    swap[0], swap[1] = 1, 0
    return [coordinate_permutation(swap, q), coordinate_permutation([(j + 1) % n for j in range(n)], q)]


def translation_generators(code) -> List[HammingAutomorphism]:
    """v -> v + c for every generator row c of the code"""
    alphabet = code_alphabet(code)
    rows = alphabet.index(code.gen.entries)
    return [HammingAutomorphism(np.arange(code.n), alphabet.add_table[row]) for row in rows]


def _degree_of(code) -> int:
    """Degree over the prime field of the code's alphabet"""
    q = code.q
    d = 0
    while q > 1:
        q //= code.field.p
        d += 1
    return d


def code_alphabet(code) -> Alphabet:
    return Alphabet(code.field, code.field.d // _degree_of(code))


def affine_space_generators(field: Field, t: int, q: int, s: int = 1) -> List[HammingAutomorphism]:
    """
    AGL_t(field) on the points of field^t (the "space" point set order), as
    coordinate permutations: x -> x A + b, for A among the GL generators
    (or diag(g) when t = 1) and b running over basis multiples of e_m.
    """
    space = affine_space(field, t)
    if t == 1:
        linear = [Matrix(field, [[field.generator]])] if field.size > 2 else []
    else:
        linear = gl_matrices(field, t)
    maps: List[Callable[[np.ndarray], np.ndarray]] = []
    for a in linear:
        maps.append(lambda x, a=a: matmul(Matrix(field, x), a).entries)
    for m in range(t):
        for b in additive_basis(field):
            shift = np.zeros(t, dtype=np.int64)
            shift[m] = b
            maps.append(lambda x, shift=shift: field.add_vec(x, shift[None, :]))
    generators = []
    for phi in maps:
        targets = space.positions(phi(space.array))
        sigma = np.empty(space.n, dtype=np.int64)
        sigma[targets] = np.arange(space.n)
        generators.append(coordinate_permutation(sigma, q))
    return generators


def orbits(gens: Sequence[HammingAutomorphism], domain: np.ndarray) -> List[np.ndarray]:
    """
    Orbits of the group generated by gens on the rows of domain, each a sorted
    array of domain row indices, listed by smallest member. Breadth first from
    unvisited seeds, under the generators and their inverses.
    """
    domain = np.asarray(domain)
    if domain.ndim != 2:
        raise AutomorphismMismatchError("orbit domain must be a 2-d array of vertices")
    lookup: Dict[bytes, int] = {row.tobytes(): i for i, row in enumerate(domain)}
    moves = list(gens) + [invert(g) for g in gens]
    label = np.full(len(domain), -1, dtype=np.int64)
    found = []
    for seed in range(len(domain)):
        if label[seed] >= 0:
            continue
        label[seed] = len(found)
        members = [seed]
        frontier = domain[[seed]]
        while len(frontier):
            fresh = []
            for g in moves:
                for row in apply_array(g, frontier):
                    j = lookup.get(row.tobytes())
                    if j is None:
                        raise DomainEscapeError(f"{tuple(int(x) for x in row)} left the orbit domain")
                    if label[j] < 0:
                        label[j] = len(found)
                        fresh.append(j)
            members.extend(fresh)
            frontier = domain[fresh]
        found.append(np.sort(np.asarray(members, dtype=np.int64)))
    return found


def coordinate_orbits(gens: Sequence[HammingAutomorphism], n: int) -> List[List[int]]:
    """Orbits of the top-group parts on the coordinates 0..n-1"""
    parent = list(range(n))

    def root(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        for j, i in enumerate(g.sigma.tolist()):
            parent[root(j)] = root(i)
    groups: Dict[int, List[int]] = {}
    for x in range(n):
        groups.setdefault(root(x), []).append(x)
    return sorted(groups.values())


@dataclass
class GeneratorSet:
    family: str
    pointset: PointSet
    matrices: List[Matrix]
    induced: List[HammingAutomorphism]
    params: dict = dataclass_field(default_factory=dict)

    @property
    def automorphisms(self) -> List[HammingAutomorphism]:
        return list(self.induced)

    def export(self) -> dict:
        return {
            "family": self.family,
            "params": self.params,
            "matrices": [m.tolist() for m in self.matrices],
            "induced": [g.export() for g in self.induced],
        }


def _generator_set(family: str, pointset: PointSet, matrices: List[Matrix], k: int, params: dict) -> GeneratorSet:
    alphabet = Alphabet(pointset.field, pointset.s)
    induced = [induce_from_matrix(m, k, pointset, alphabet) for m in matrices]
    if family != "GL":
        induced.append(scalar_diag_generator(alphabet.q, pointset.n, alphabet))
    if len(coordinate_orbits(induced, pointset.n)) != 1:
        raise GeneratorValidationError(f"{family} generators are not transitive on the {pointset.kind} points")
    params = {"q": alphabet.q, "s": pointset.s, "t": pointset.t, "k": k, "kind": pointset.kind, **params}
    log_event(construction_logger, "generators", params, family=family, count=len(induced))
    return GeneratorSet(family, pointset, matrices, induced, params)


def generators_GL(field: Field, t: int, k: int = 1, s: int = 1, pointset: Optional[PointSet] = None) -> GeneratorSet:
    pointset = pointset or projective_points(field, t, s)
    return _generator_set("GL", pointset, gl_matrices(field, t), k, {})


def generators_AGL(field: Field, t: int, k: int = 1, s: int = 1) -> GeneratorSet:
    return _generator_set("AGL", affine_points(field, t, s), agl_matrices(field, t), k, {})


def generators_GU3(field: Field, k: int = 1, s: int = 2) -> GeneratorSet:
    return _generator_set("GU3", hermitian_unital(field, s), gu3_matrices(field), k, {})


def generators_Sz(field: Field, k: int = 1, s: int = 1) -> GeneratorSet:
    sigma = suzuki_exponent(field)
    return _generator_set("Sz", suzuki_ovoid(field, s), sz_matrices(field), k, {"suzuki_exponent": sigma})


def family_generators(kind: str, field: Field, t: int, k: int, s: int) -> GeneratorSet:
    if kind == "projective":
        return generators_GL(field, t, k, s)
    if kind == "affine":
        return generators_AGL(field, t, k, s)
    if kind == "unital":
        return generators_GU3(field, k, s)
    if kind == "ovoid":
        return generators_Sz(field, k, s)
    raise GeometryParameterError(f"no matrix group attached to point set kind '{kind}'")

