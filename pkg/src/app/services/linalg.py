"""
Dense linear algebra over a Field, entries stored as numpy arrays of element encodings.
"""

from dataclasses import dataclass
from typing import List, Sequence, Tuple

import numpy as np

from app.services.finite_field import Field
from app.utils.exceptions import FieldMismatchError, MatrixShapeError


@dataclass(frozen=True, eq=False)
class Matrix:
    field: Field
    entries: np.ndarray

    def __post_init__(self):
        entries = np.array(self.entries, dtype=np.int64, copy=True)
        if entries.ndim != 2:
            raise MatrixShapeError(f"matrix entries must be 2-dimensional, got shape {entries.shape}")
        if entries.size and (entries.min() < 0 or entries.max() >= self.field.size):
            raise FieldMismatchError(f"matrix entries are not elements of {self.field}")
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    @property
    def rows(self) -> int:
        return self.entries.shape[0]

    @property
    def cols(self) -> int:
        return self.entries.shape[1]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.entries.shape == other.entries.shape
            and bool(np.array_equal(self.entries, other.entries))
        )

    def __hash__(self):
        return hash((self.field, self.entries.shape, self.entries.tobytes()))

    def __repr__(self):
        return f"Matrix({self.field!r}, {self.rows}x{self.cols})"

    def row(self, i: int) -> np.ndarray:
        return self.entries[i]

    def tolist(self) -> List[List[int]]:
        return self.entries.tolist()

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence[int]], cols: int = None) -> "Matrix":
        rows = list(rows)
        if not rows:
            return cls(field, np.zeros((0, cols or 0), dtype=np.int64))
        return cls(field, np.array(rows, dtype=np.int64).reshape(len(rows), -1))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, np.eye(n, dtype=np.int64))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, np.zeros((rows, cols), dtype=np.int64))


def _check_same_field(a: Matrix, b: Matrix):
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} and {b.field} do not interoperate")


def _reduce(field: Field, entries: np.ndarray) -> Tuple[np.ndarray, List[int]]:
    """Gauss-Jordan elimination on a writable copy; returns (nonzero rows, pivot columns)"""
    a = np.array(entries, dtype=np.int64, copy=True)
    rows, cols = a.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if len(nonzero) == 0:
            continue
        pivot_row = r + int(nonzero[0])
        if pivot_row != r:
            a[[r, pivot_row]] = a[[pivot_row, r]]
        a[r] = field.mul_vec(a[r], field.inv(int(a[r, c])))
        factors = a[:, c].copy()
        factors[r] = 0
        mask = factors != 0
        if mask.any():
            a[mask] = field.sub_vec(a[mask], field.mul_vec(factors[mask][:, None], a[r][None, :]))
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rref(m: Matrix) -> Tuple[Matrix, int, List[int]]:
    """Reduced row echelon form with leftmost unit pivots; zero rows dropped"""
    reduced, pivots = _reduce(m.field, m.entries)
    return Matrix(m.field, reduced.reshape(len(pivots), m.cols)), len(pivots), pivots


def rank(m: Matrix) -> int:
    return rref(m)[1]


def pivot_columns(m: Matrix) -> List[int]:
    """Pivot of each row of a matrix already in RREF"""
    pivots = []
    for row in m.entries:
        nonzero = np.nonzero(row)[0]
        if len(nonzero) == 0:
            raise MatrixShapeError("matrix in RREF has a zero row")
        pivots.append(int(nonzero[0]))
    return pivots


def kernel_basis(m: Matrix) -> Matrix:
    """Rows form a basis of the right kernel {x : m x^T = 0}"""
    field = m.field
    reduced, _, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in set(pivots)]
    basis = np.zeros((len(free), m.cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        if pivots:
            basis[i, pivots] = field.neg_vec(reduced.entries[:, f])
    return Matrix(field, basis)


def left_kernel_basis(m: Matrix) -> Matrix:
    """Rows x with x m = 0"""
    return kernel_basis(transpose(m))


def rows_in_rowspace(m: Matrix, vectors: np.ndarray) -> np.ndarray:
    """Membership of every row of `vectors` in the row space of m (m in RREF)"""
    field = m.field
    v = np.array(np.atleast_2d(vectors), dtype=np.int64, copy=True)
    if v.shape[1] != m.cols:
        raise MatrixShapeError(f"vectors of length {v.shape[1]} against a {m.rows}x{m.cols} matrix")
    if v.size and (v.min() < 0 or v.max() >= field.size):
        raise FieldMismatchError(f"vector entries are not elements of {field}")
    for i, c in enumerate(pivot_columns(m)):
        factors = v[:, c].copy()
        mask = factors != 0
        if mask.any():
            v[mask] = field.sub_vec(v[mask], field.mul_vec(factors[mask][:, None], m.entries[i][None, :]))
    return ~np.any(v != 0, axis=1)


def is_in_rowspace(m: Matrix, v: Sequence[int]) -> bool:
    """True iff v is a linear combination of the rows of m (m in RREF)"""
    return bool(rows_in_rowspace(m, np.asarray(v, dtype=np.int64)[None, :])[0])


def transpose(m: Matrix) -> Matrix:
    return Matrix(m.field, m.entries.T.copy())


def matmul(a: Matrix, b: Matrix) -> Matrix:
    _check_same_field(a, b)
    if a.cols != b.rows:
        raise MatrixShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    field = a.field
    acc = np.zeros((a.rows, b.cols), dtype=np.int64)
    for k in range(a.cols):
        acc = field.add_vec(acc, field.mul_vec(a.entries[:, k : k + 1], b.entries[k : k + 1, :]))
    return Matrix(field, acc)


def vector_times_matrix(field: Field, v: Sequence[int], m: Matrix) -> np.ndarray:
    return matmul(Matrix(field, np.asarray(v, dtype=np.int64)[None, :]), m).entries[0]


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise MatrixShapeError(f"cannot invert a {m.rows}x{m.cols} matrix")
    n = m.rows
    augmented = np.concatenate([m.entries, np.eye(n, dtype=np.int64)], axis=1)
    reduced, pivots = _reduce(m.field, augmented)
    if pivots[:n] != list(range(n)) or len(reduced) < n:
        raise MatrixShapeError("matrix is singular")
    return Matrix(m.field, reduced[:n, n:])


def scalar_matrix(field: Field, n: int, c: int) -> Matrix:
    return Matrix(field, np.eye(n, dtype=np.int64) * c)


def restrict_scalars(m: Matrix, s: int) -> Matrix:
    """
    Expands each entry over GF(q^s) into its s coordinates over GF(q) in the power
    basis of the field generator. An r x c matrix becomes r x (c*s); columns
    j*s .. j*s+s-1 hold the coordinates of column j.
    """
    table = m.field.subfield_coordinates(s)
    expanded = table[m.entries]
    return Matrix(m.field, expanded.reshape(m.rows, m.cols * s))
