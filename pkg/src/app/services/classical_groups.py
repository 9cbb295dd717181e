"""
Matrix generators of the classical groups acting on the point sets, for row vectors (v -> v M).
"""

from typing import Callable, Dict, List, Sequence

import numpy as np

from app.services.finite_field import Field
from app.services.linalg import Matrix, matmul
from app.utils.exceptions import (
    EnumerationCapError,
    GeneratorValidationError,
    GeometryParameterError,
)


def diagonal_matrix(field: Field, diagonal: Sequence[int]) -> Matrix:
    return Matrix(field, np.diag(np.asarray(diagonal, dtype=np.int64)))


def elementary_matrix(field: Field, t: int, i: int, j: int, a: int) -> Matrix:
    """I + a E_ij"""
    entries = np.eye(t, dtype=np.int64)
    entries[i, j] = a
    return Matrix(field, entries)


def permutation_matrix(field: Field, perm: Sequence[int]) -> Matrix:
    """Row i has its one in column perm[i], so e_i M = e_perm[i]"""
    t = len(perm)
    entries = np.zeros((t, t), dtype=np.int64)
    entries[np.arange(t), list(perm)] = 1
    return Matrix(field, entries)


def antidiagonal_matrix(field: Field, t: int) -> Matrix:
    return permutation_matrix(field, list(reversed(range(t))))


def additive_basis(field: Field) -> List[int]:
    """Powers 1, g, ..., g^(d-1) of the generator, a basis over the prime field"""
    return [field.pow(field.generator, i) for i in range(field.d)]


def gl_matrices(field: Field, t: int) -> List[Matrix]:
    """
    diag(g, 1, ..., 1), the transvections I + a E_12 for a in a basis over the
    prime field, and the cyclic permutation matrix. The cycle conjugates E_12
    to every E_(i,i+1), whose commutators give all of SL_t; the diagonal
    element covers the determinant.
    """
    if t < 2:
        raise GeometryParameterError(f"dimension {t} must be at least 2")
    matrices = []
    if field.size > 2:
        matrices.append(diagonal_matrix(field, [field.generator] + [1] * (t - 1)))
    for a in additive_basis(field):
        matrices.append(elementary_matrix(field, t, 0, 1, a))
    matrices.append(permutation_matrix(field, [(i + 1) % t for i in range(t)]))
    return matrices


def agl_matrices(field: Field, t: int) -> List[Matrix]:
    """
    Matrices with first column (1, 0, ..., 0): a GL_(t-1) block in the lower
    right and translations I + b E_1j, so (1, a) M stays in the affine chart.
    """
    if t < 2:
        raise GeometryParameterError(f"dimension {t} must be at least 2")
    matrices = []
    if t == 2:
        if field.size > 2:
            matrices.append(diagonal_matrix(field, [1, field.generator]))
    else:
        for block in gl_matrices(field, t - 1):
            entries = np.eye(t, dtype=np.int64)
            entries[1:, 1:] = block.entries
            matrices.append(Matrix(field, entries))
    for j in range(1, t):
        for b in additive_basis(field):
            matrices.append(elementary_matrix(field, t, 0, j, b))
    return matrices


def hermitian_root(field: Field) -> int:
    """r = sqrt(|field|), the Hermitian involution being a -> a^r"""
    if field.p != 2 or field.d % 2 != 0:
        raise GeometryParameterError(
            f"Hermitian forms need characteristic 2 and even degree, got {field}"
        )
    return 2 ** (field.d // 2)


def hermitian_gram(field: Field) -> Matrix:
    return antidiagonal_matrix(field, 3)


def preserves_hermitian_form(field: Field, m: Matrix) -> bool:
    """M J (M^sigma)^T == J for the antidiagonal Gram matrix J"""
    r = hermitian_root(field)
    gram = hermitian_gram(field)
    conjugate = Matrix(field, field.pow_vec(m.entries, r).T)
    return matmul(matmul(m, gram), conjugate) == gram


def gu3_matrices(field: Field) -> List[Matrix]:
    """
    Torus diag(g, 1, g^(-r)), the antidiagonal Weyl element, and the lower
    unipotent elements with rows (1,0,0), (b,1,0), (c,b^r,1) subject to
    c + c^r = b^(r+1). b runs over a basis over the prime field; the pure
    (0, c) elements use c in a basis of the fixed field GF(r).
    """
    r = hermitian_root(field)
    g = field.generator
    matrices = [
        diagonal_matrix(field, [g, 1, field.pow(g, -r)]),
        hermitian_gram(field),
    ]

    def unipotent(b: int, c: int) -> Matrix:
        return Matrix(field, [[1, 0, 0], [b, 1, 0], [c, field.pow(b, r), 1]])

    for b in additive_basis(field):
        target = field.pow(b, r + 1)
        c = next(
            (c for c in range(field.size) if field.add(c, field.pow(c, r)) == target),
            None,
        )
        if c is None:
            raise GeneratorValidationError(f"no unipotent partner for b={b} in {field}")
        matrices.append(unipotent(b, c))

    fixed_generator = field.subfield_generator(2)
    for i in range(field.d // 2):
        matrices.append(unipotent(0, field.pow(fixed_generator, i)))

    for m in matrices:
        if not preserves_hermitian_form(field, m):
            raise GeneratorValidationError(f"{m.tolist()} does not preserve the Hermitian form")
    return matrices


def suzuki_exponent(field: Field) -> int:
    """sigma = 2^(f+1) for |field| = 2^(2f+1), so sigma^2 = 2|field|"""
    if field.p != 2 or field.d % 2 == 0 or field.d < 3:
        raise GeometryParameterError(
            f"Suzuki groups need a field of order 2^(2f+1) with f >= 1, got {field}"
        )
    return 2 ** ((field.d + 1) // 2)


def suzuki_unipotent(field: Field, a: int, b: int) -> Matrix:
    sigma = suzuki_exponent(field)
    mul, add, pw = field.mul, field.add, field.pow
    top = add(add(mul(a, b), pw(a, sigma + 2)), pw(b, sigma))
    return Matrix(
        field,
        [
            [1, a, b, top],
            [0, 1, pw(a, sigma), add(b, pw(a, sigma + 1))],
            [0, 0, 1, a],
            [0, 0, 0, 1],
        ],
    )


def sz_matrices(field: Field) -> List[Matrix]:
    """
    Torus diag(c, c^(sigma-1), c^(1-sigma), c^(-1)) for the field generator c,
    the unipotent elements for a and b over a basis of the prime field, and
    the antidiagonal involution swapping e1 <-> f1 and e2 <-> f2.
    """
    sigma = suzuki_exponent(field)
    c = field.generator
    matrices = [
        diagonal_matrix(
            field,
            [c, field.pow(c, sigma - 1), field.pow(c, 1 - sigma), field.pow(c, -1)],
        )
    ]
    for a in additive_basis(field):
        matrices.append(suzuki_unipotent(field, a, 0))
    for b in additive_basis(field):
        matrices.append(suzuki_unipotent(field, 0, b))
    matrices.append(antidiagonal_matrix(field, 4))
    return matrices


def normalise_scalar(m: Matrix) -> Matrix:
    """Representative of m modulo scalars: first nonzero entry made 1"""
    flat = m.entries.reshape(-1)
    lead = int(flat[np.nonzero(flat)[0][0]])
    return Matrix(m.field, m.field.mul_vec(m.entries, m.field.inv(lead)))


def matrix_group_closure(
    gens: Sequence[Matrix], limit: int = 10**5, modulo_scalars: bool = False
) -> Dict[Matrix, None]:
    """
    Every product of the generators, found breadth first. With modulo_scalars
    the elements are kept as normalised representatives of the projective group.
    """
    normal: Callable[[Matrix], Matrix] = normalise_scalar if modulo_scalars else (lambda m: m)
    gens = [normal(g) for g in gens]
    elements = dict.fromkeys(gens)
    boundary = list(elements)
    while boundary:
        new_boundary = []
        for a in gens:
            for b in boundary:
                c = normal(matmul(a, b))
                if c not in elements:
                    elements[c] = None
                    new_boundary.append(c)
                    if len(elements) > limit:
                        raise EnumerationCapError(f"matrix closure exceeded {limit} elements")
        boundary = new_boundary
    return elements
