"""
Parameters of linear codes: minimum distance, weight enumerator, covering
radius, distance classes, spheres, perfection and the q-ary design property.

Vertices of the Hamming graph are rows of alphabet positions (0..q-1, with 0
the zero symbol); codewords are enumerated as blocks of such rows.
"""

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from app.schemas.reports import AnalysisReport, BoundedValue, DesignReport, WeightEnumerator
from app.services.build_timed_logger import analysis_logger
from app.services.code_builder import LinearCode
from app.services.finite_field import Field
from app.services.linalg import kernel_basis
from app.utils.exceptions import (
    AutomorphismMismatchError,
    CodeParameterError,
    EnumerationCapError,
    InexactInputError,
)
from app.utils.log_templates import log_event
from settings import settings


def index_dtype(q: int):
    return np.uint8 if q <= 256 else np.int64


def span_words(field: Field, alphabet: Sequence[int], rows: np.ndarray) -> np.ndarray:
    """
    All GF(q)-combinations of the rows, as field encodings. Combination index
    m = sum c_i q^(r-1-i) (c_i the alphabet position of the i-th coefficient),
    so the coefficient of the first row varies slowest.
    """
    scalars = np.asarray(alphabet, dtype=np.int64)
    words = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        terms = field.mul_vec(scalars[:, None], row[None, :])
        words = field.add_vec(words[:, None, :], terms[None, :, :]).reshape(-1, rows.shape[1])
    return words


@dataclass
class CodewordBlocks:
    """Codewords split as head (enumerated in one array) plus tail offsets"""

    head: np.ndarray
    tail: np.ndarray
    field: Field

    def __len__(self) -> int:
        return len(self.tail)

    def block(self, j: int) -> np.ndarray:
        return self.field.add_vec(self.head, self.tail[j][None, :])


def codeword_blocks(code: LinearCode, cap: Optional[int] = None) -> CodewordBlocks:
    cap = settings.codeword_cap if cap is None else cap
    if code.size > cap:
        raise EnumerationCapError(f"{code.size} codewords exceed the enumeration cap {cap}")
    head_rows = 0
    while head_rows < code.dim and code.q ** (head_rows + 1) <= settings.enumeration_block:
        head_rows += 1
    rows = code.gen.entries
    split = code.dim - head_rows
    return CodewordBlocks(
        head=span_words(code.field, code.alphabet, rows[split:]),
        tail=span_words(code.field, code.alphabet, rows[:split]),
        field=code.field,
    )


def map_blocks(
    blocks: CodewordBlocks, fn: Callable[[np.ndarray], object], workers: Optional[int] = None
) -> List[object]:
    """fn over every block, in block order, on a thread pool when workers > 1"""
    workers = settings.max_workers if workers is None else workers
    if workers <= 1 or len(blocks) == 1:
        return [fn(blocks.block(j)) for j in range(len(blocks))]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda j: fn(blocks.block(j)), range(len(blocks))))


def iter_codewords(code: LinearCode, cap: Optional[int] = None) -> Iterator[np.ndarray]:
    blocks = codeword_blocks(code, cap)
    for j in range(len(blocks)):
        yield blocks.block(j)


def all_codewords(code: LinearCode, cap: Optional[int] = None) -> np.ndarray:
    """Every codeword as a row of field encodings"""
    return np.concatenate(list(iter_codewords(code, cap)))


def _sample_codewords(code: LinearCode, count: int) -> np.ndarray:
    rng = np.random.default_rng(settings.sample_seed)
    coefficients = np.asarray(code.alphabet, dtype=np.int64)[
        rng.integers(0, code.q, size=(count, code.dim))
    ]
    words = np.zeros((count, code.n), dtype=np.int64)
    for i, row in enumerate(code.gen.entries):
        words = code.field.add_vec(words, code.field.mul_vec(coefficients[:, i : i + 1], row[None, :]))
    return np.concatenate([code.gen.entries, words])


def weights(words: np.ndarray) -> np.ndarray:
    return np.count_nonzero(words, axis=1)


def min_distance(
    code: LinearCode, enumeration_cap: Optional[int] = None, workers: Optional[int] = None
) -> BoundedValue:
    """
    Minimum nonzero weight. Exhaustive when q^dim is within the cap; otherwise
    the smallest weight over the generator rows and a seeded random sample of
    codewords, flagged as an upper bound.
    """
    if code.dim == 0:
        raise CodeParameterError(f"{code.name or 'code'} is zero-dimensional")
    cap = settings.codeword_cap if enumeration_cap is None else enumeration_cap
    if code.size <= cap:
        blocks = codeword_blocks(code, cap)

        def block_min(block: np.ndarray) -> int:
            w = weights(block)
            w = w[w > 0]
            return int(w.min()) if len(w) else code.n + 1

        result = BoundedValue(value=min(map_blocks(blocks, block_min, workers)), exact=True)
    else:
        sample = weights(_sample_codewords(code, settings.sample_size))
        result = BoundedValue(value=int(sample[sample > 0].min()), exact=False, bound="upper")
    code.min_distance = result
    log_event(analysis_logger, "min_distance", code.describe(), result=result.dict())
    return result


def weight_enumerator(
    code: LinearCode, cap: Optional[int] = None, workers: Optional[int] = None
) -> WeightEnumerator:
    """Number of codewords of each weight; partial (complete=False) past the cap"""
    cap = settings.codeword_cap if cap is None else cap
    if code.size <= cap:
        blocks = codeword_blocks(code, cap)
        complete = True
    else:
        blocks = codeword_blocks_prefix(code, cap)
        complete = False
    counts = np.zeros(code.n + 1, dtype=np.int64)
    for partial in map_blocks(
        blocks, lambda block: np.bincount(weights(block), minlength=code.n + 1), workers
    ):
        counts += partial
    return WeightEnumerator(
        counts={w: int(c) for w, c in enumerate(counts) if c},
        complete=complete,
        enumerated=int(counts.sum()),
    )


def codeword_blocks_prefix(code: LinearCode, cap: int) -> CodewordBlocks:
    """The first ~cap codewords in combination order"""
    head_rows = 0
    while head_rows < code.dim and code.q ** (head_rows + 1) <= min(cap, settings.enumeration_block):
        head_rows += 1
    split = code.dim - head_rows
    head = span_words(code.field, code.alphabet, code.gen.entries[split:])
    keep = max(1, cap // len(head))
    tail = np.zeros((keep, code.n), dtype=np.int64)
    for m, coefficients in enumerate(itertools.islice(itertools.product(code.alphabet, repeat=split), keep)):
        for c, row in zip(coefficients, code.gen.entries[:split]):
            tail[m] = code.field.add_vec(tail[m], code.field.mul_vec(row, c))
    return CodewordBlocks(head, tail[: m + 1], code.field)


def parity_check(code: LinearCode) -> np.ndarray:
    return kernel_basis(code.gen).entries


@dataclass
class SyndromeTable:
    """Coset leader weight of every syndrome, from a breadth-first search"""

    code: LinearCode
    parity: np.ndarray
    leader_weight: np.ndarray

    def syndrome_keys(self, vertices: np.ndarray) -> np.ndarray:
        """Vertices given as alphabet positions"""
        code = self.code
        words = code.from_indices(vertices)
        syndromes = np.zeros((len(words), self.parity.shape[0]), dtype=np.int64)
        for j in range(code.n):
            syndromes = code.field.add_vec(
                syndromes, code.field.mul_vec(words[:, j : j + 1], self.parity[:, j][None, :])
            )
        return _encode_rows(code.to_indices(syndromes), code.q)

    def distances(self, vertices: np.ndarray) -> np.ndarray:
        return self.leader_weight[self.syndrome_keys(np.atleast_2d(vertices))]


def _encode_rows(indices: np.ndarray, q: int) -> np.ndarray:
    keys = np.zeros(len(indices), dtype=np.int64)
    for j in range(indices.shape[1]):
        keys = keys * q + indices[:, j]
    return keys


def syndrome_table(code: LinearCode, vertex_cap: Optional[int] = None) -> SyndromeTable:
    cap = settings.vertex_cap if vertex_cap is None else vertex_cap
    redundancy = code.n - code.dim
    if code.q**redundancy > cap:
        raise EnumerationCapError(f"{code.q}^{redundancy} syndromes exceed the vertex cap {cap}")
    field = code.field
    parity = parity_check(code)
    nonzero = np.asarray(code.alphabet[1:], dtype=np.int64)
    moves = field.mul_vec(nonzero[:, None, None], parity.T[None, :, :]).reshape(-1, redundancy)
    leader_weight = np.full(code.q**redundancy, -1, dtype=np.int16)
    leader_weight[0] = 0
    if redundancy == 0:
        return SyndromeTable(code, parity, leader_weight)
    frontier = np.zeros((1, redundancy), dtype=np.int64)
    layer = 0
    chunk = max(1, settings.enumeration_block // max(1, len(moves)))
    while len(frontier):
        layer += 1
        fresh = []
        for start in range(0, len(frontier), chunk):
            part = frontier[start : start + chunk]
            candidates = field.add_vec(part[:, None, :], moves[None, :, :]).reshape(-1, redundancy)
            keys = _encode_rows(code.to_indices(candidates), code.q)
            keys, first = np.unique(keys, return_index=True)
            new = leader_weight[keys] < 0
            leader_weight[keys[new]] = layer
            fresh.append(candidates[first[new]])
        frontier = np.concatenate(fresh) if fresh else np.zeros((0, redundancy), dtype=np.int64)
    return SyndromeTable(code, parity, leader_weight)


def coset_leader_distribution(table: SyndromeTable) -> Dict[int, int]:
    counts = np.bincount(table.leader_weight)
    return {w: int(c) for w, c in enumerate(counts) if c}


def error_capacity(delta: int) -> int:
    return (delta - 1) // 2


def distance_to_code(code: LinearCode, vertex: Sequence[int], cap: Optional[int] = None) -> int:
    """Distance from a vertex (alphabet positions) to its nearest codeword"""
    vertex = np.asarray(vertex, dtype=np.int64)
    if vertex.shape != (code.n,):
        raise AutomorphismMismatchError(f"vertex of length {vertex.shape} against a code of length {code.n}")
    word = code.from_indices(vertex)
    best = code.n
    for block in iter_codewords(code, cap):
        best = min(best, int(weights(code.field.sub_vec(word[None, :], block)).min()))
    return best


def covering_radius(
    code: LinearCode,
    vertex_cap: Optional[int] = None,
    codeword_cap: Optional[int] = None,
) -> BoundedValue:
    """
    Exact through the syndrome table when q^(n - dim) is within the vertex cap.
    Otherwise a lower bound: the largest distance to the code over a seeded
    sample of vertices, and at least floor((delta - 1)/2) when delta is exact.
    """
    if code.dim == code.n:
        result = BoundedValue(value=0, exact=True)
    else:
        cap = settings.vertex_cap if vertex_cap is None else vertex_cap
        if code.q ** (code.n - code.dim) <= cap:
            table = syndrome_table(code, cap)
            result = BoundedValue(value=int(table.leader_weight.max()), exact=True)
        else:
            result = BoundedValue(
                value=_sampled_radius_bound(code, codeword_cap), exact=False, bound="lower"
            )
    code.covering_radius = result
    log_event(analysis_logger, "covering_radius", code.describe(), result=result.dict())
    return result


def _sampled_radius_bound(code: LinearCode, codeword_cap: Optional[int]) -> int:
    bound = 0
    if code.min_distance is not None and code.min_distance.exact and code.dim > 0:
        bound = error_capacity(code.min_distance.value)
    cap = settings.codeword_cap if codeword_cap is None else codeword_cap
    if code.size > cap:
        return bound
    codewords = all_codewords(code, cap)
    count = max(1, min(settings.sample_size, 2**26 // max(1, code.size * code.n)))
    rng = np.random.default_rng(settings.sample_seed)
    for vertex in rng.integers(0, code.q, size=(count, code.n)):
        word = code.from_indices(vertex)
        bound = max(bound, int(weights(code.field.sub_vec(word[None, :], codewords)).min()))
    return bound


def sphere_size(n: int, q: int, i: int) -> int:
    return math.comb(n, i) * (q - 1) ** i


def sphere(center: Sequence[int], i: int, q: int) -> np.ndarray:
    """Vertices at Hamming distance exactly i from center, lexicographic"""
    center = np.asarray(center, dtype=np.int64)
    n = len(center)
    if not 0 <= i <= n:
        raise CodeParameterError(f"radius {i} outside 0..{n}")
    shifts = np.array(list(itertools.product(range(1, q), repeat=i)), dtype=np.int64).reshape(-1, i)
    parts = []
    for positions in itertools.combinations(range(n), i):
        rows = np.repeat(center[None, :], len(shifts), axis=0)
        if i:
            rows[:, positions] = (center[list(positions)][None, :] + shifts) % q
        parts.append(rows)
    vertices = np.concatenate(parts).astype(index_dtype(q))
    return vertices[np.lexsort(vertices.T[::-1])]


@dataclass
class DistanceClassification:
    """
    classes[i] holds the vertices at distance exactly i from the code, as rows
    of alphabet positions in lexicographic order. Restricted classifications
    only hold C_0 .. C_m for the radii where the sphere union is exact.
    """

    code: LinearCode
    classes: List[np.ndarray]
    covering_radius: Optional[int]
    exact: bool
    restricted: bool = False

    def sizes(self) -> List[int]:
        return [len(c) for c in self.classes]


def _vertex_chunks(n: int, q: int, chunk: int) -> Iterator[np.ndarray]:
    total = q**n
    powers = q ** np.arange(n - 1, -1, -1, dtype=np.int64)
    for start in range(0, total, chunk):
        numbers = np.arange(start, min(total, start + chunk), dtype=np.int64)
        yield ((numbers[:, None] // powers[None, :]) % q).astype(index_dtype(q))


def distance_classes(
    code: LinearCode, vertex_cap: Optional[int] = None, restricted_radius: Optional[int] = None
) -> DistanceClassification:
    """
    Exhaustive partition of all q^n vertices when q^n is within the vertex cap.
    With restricted_radius m, only C_0 .. C_m are built as unions of spheres
    around codewords, which requires delta >= 2m.
    """
    cap = settings.vertex_cap if vertex_cap is None else vertex_cap
    if restricted_radius is not None:
        return _restricted_classes(code, restricted_radius, cap)
    if code.q**code.n > cap:
        raise EnumerationCapError(f"{code.q}^{code.n} vertices exceed the vertex cap {cap}")
    table = syndrome_table(code, cap)
    radius = int(table.leader_weight.max())
    parts: List[List[np.ndarray]] = [[] for _ in range(radius + 1)]
    for vertices in _vertex_chunks(code.n, code.q, 2**16):
        distances = table.distances(vertices)
        for i in range(radius + 1):
            parts[i].append(vertices[distances == i])
    classes = [np.concatenate(p) for p in parts]
    code.covering_radius = BoundedValue(value=radius, exact=True)
    return DistanceClassification(code, classes, radius, exact=True)


def _restricted_classes(code: LinearCode, radius: int, cap: int) -> DistanceClassification:
    delta = code.min_distance or min_distance(code)
    if not delta.exact or delta.value < 2 * radius:
        raise InexactInputError(
            f"sphere unions give distance classes up to {radius} only when delta >= {2 * radius}"
        )
    codewords = code.to_indices(all_codewords(code))
    classes = [codewords[np.lexsort(codewords.T[::-1])].astype(index_dtype(code.q))]
    for i in range(1, radius + 1):
        if code.size * sphere_size(code.n, code.q, i) > cap:
            raise EnumerationCapError(f"class C_{i} exceeds the vertex cap {cap}")
        offsets = code.from_indices(sphere(np.zeros(code.n, dtype=np.int64), i, code.q))
        words = code.from_indices(codewords)
        union = code.field.add_vec(words[:, None, :], offsets[None, :, :]).reshape(-1, code.n)
        union = np.unique(code.to_indices(union).astype(index_dtype(code.q)), axis=0)
        classes.append(union)
    return DistanceClassification(code, classes, None, exact=False, restricted=True)


def minimum_weight_codewords(code: LinearCode, weight: int, cap: Optional[int] = None) -> np.ndarray:
    """Codewords of the given weight, as rows of alphabet positions"""
    found = [block[weights(block) == weight] for block in iter_codewords(code, cap)]
    return code.to_indices(np.concatenate(found)) if found else np.zeros((0, code.n), dtype=np.int64)


def design_check(code: LinearCode, block_weight: int, cap: Optional[int] = None) -> DesignReport:
    """
    Counts, for every weight-2 vertex, the weight-w codewords agreeing with it
    on its support; a design when all counts agree.
    """
    blocks = minimum_weight_codewords(code, block_weight, cap)
    report = DesignReport(n=code.n, block_weight=block_weight, blocks=len(blocks))
    if not len(blocks):
        return report
    q = code.q
    lam = None
    for a, b in itertools.combinations(range(code.n), 2):
        pair_counts = np.bincount(blocks[:, a].astype(np.int64) * q + blocks[:, b], minlength=q * q)
        pair_counts = pair_counts.reshape(q, q)[1:, 1:]
        if lam is None:
            lam = int(pair_counts[0, 0])
        deviating = np.argwhere(pair_counts != lam)
        if len(deviating):
            x, y = (int(v) + 1 for v in deviating[0])
            report.counterexample = ((a, b), (x, y), int(pair_counts[x - 1, y - 1]))
            return report
    report.lam = lam
    log_event(analysis_logger, "design_check", code.describe(), block_weight=block_weight, lam=lam)
    return report


def exact_parameters(code: LinearCode) -> Tuple[int, int]:
    delta = code.min_distance or min_distance(code)
    rho = code.covering_radius or covering_radius(code)
    if not (delta.exact and rho.exact):
        raise InexactInputError(f"{code.name or 'code'} has only bounds on delta or rho")
    return delta.value, rho.value


def is_perfect(code: LinearCode) -> bool:
    """rho = e and the balls of radius e around the codewords fill the space"""
    delta, rho = exact_parameters(code)
    e = error_capacity(delta)
    ball = sum(sphere_size(code.n, code.q, i) for i in range(e + 1))
    return rho == e and code.size * ball == code.q**code.n


def is_hamming_code(code: LinearCode) -> bool:
    delta, rho = exact_parameters(code)
    return delta == 3 and rho == 1 and is_perfect(code)


def is_dual_repetition_code(code: LinearCode) -> bool:
    """Every codeword has coordinate sum zero and dim = n - 1"""
    if code.dim != code.n - 1:
        return False
    field = code.field
    sums = np.zeros(code.dim, dtype=np.int64)
    for j in range(code.n):
        sums = field.add_vec(sums, code.gen.entries[:, j])
    return bool(np.all(sums == 0))


def analyze(
    code: LinearCode,
    codeword_cap: Optional[int] = None,
    vertex_cap: Optional[int] = None,
    workers: Optional[int] = None,
) -> AnalysisReport:
    delta = min_distance(code, codeword_cap, workers) if code.dim else None
    rho = covering_radius(code, vertex_cap, codeword_cap)
    enumerator = weight_enumerator(code, codeword_cap, workers)
    perfect = None
    if delta is not None and delta.exact and rho.exact:
        perfect = is_perfect(code)
    leaders = None
    cap = settings.vertex_cap if vertex_cap is None else vertex_cap
    if code.dim < code.n and code.q ** (code.n - code.dim) <= cap:
        leaders = coset_leader_distribution(syndrome_table(code, cap))
    report = AnalysisReport(
        name=code.name,
        q=code.q,
        n=code.n,
        dim=code.dim,
        min_distance=delta,
        covering_radius=rho,
        error_capacity=error_capacity(delta.value) if delta is not None else None,
        weight_enumerator=enumerator,
        perfect=perfect,
        trivial=code.is_trivial,
        coset_leader_weights=leaders,
    )
    log_event(analysis_logger, "analyze", code.describe(), report=report.dict())
    return report
