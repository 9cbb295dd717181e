"""
Exact arithmetic in GF(p^d).

Elements are encoded as integers in [0, p^d): the base-p digits of the
encoding are the coefficients (lowest degree first) of the polynomial
representative modulo the field's modulus. Scalar operations work on these
integers; the ``*_vec`` kernels work on numpy arrays of them and are what
the code and orbit loops use.
"""

import bisect
import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from app.utils.exceptions import (
    FieldMismatchError,
    FieldParameterError,
    ZeroDivisionFieldError,
)
from settings import settings


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_factors(n: int) -> List[int]:
    """Distinct prime factors of n, ascending"""
    factors = []
    i = 2
    while i * i <= n:
        if n % i == 0:
            factors.append(i)
            while n % i == 0:
                n //= i
        i += 1
    if n > 1:
        factors.append(n)
    return factors


def prime_power(q: int) -> Tuple[int, int]:
    """Returns (p, d) with q = p^d, or raises FieldParameterError"""
    factors = prime_factors(q) if q > 1 else []
    if len(factors) != 1:
        raise FieldParameterError(f"{q} is not a prime power")
    p = factors[0]
    d = 0
    while q > 1:
        q //= p
        d += 1
    return p, d


# Polynomials over GF(p) as coefficient lists, lowest degree first.


def _poly_trim(a: List[int]) -> List[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_divmod_rem(a: List[int], m: List[int], p: int) -> List[int]:
    a = _poly_trim(list(a))
    m = _poly_trim(list(m))
    lead_inv = pow(m[-1], -1, p)
    while len(a) >= len(m):
        factor = (a[-1] * lead_inv) % p
        shift = len(a) - len(m)
        for i, c in enumerate(m):
            a[shift + i] = (a[shift + i] - factor * c) % p
        _poly_trim(a)
    return a


def _poly_mulmod(a: List[int], b: List[int], m: List[int], p: int) -> List[int]:
    if not a or not b:
        return []
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    return _poly_divmod_rem(prod, m, p)


def _poly_powmod(a: List[int], e: int, m: List[int], p: int) -> List[int]:
    result = [1]
    base = _poly_divmod_rem(a, m, p)
    while e > 0:
        if e & 1:
            result = _poly_mulmod(result, base, m, p)
        base = _poly_mulmod(base, base, m, p)
        e >>= 1
    return result


def _poly_gcd(a: List[int], b: List[int], p: int) -> List[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    while b:
        a, b = b, _poly_divmod_rem(a, b, p)
    return a


def is_irreducible(coeffs: Sequence[int], p: int) -> bool:
    """Ben-Or test: f of degree d is irreducible iff gcd(x^(p^i) - x, f) = 1 for i <= d/2"""
    f = _poly_trim(list(coeffs))
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    h = [0, 1]
    for _ in range(d // 2):
        h = _poly_powmod(h, p, f, p)
        diff = list(h) + [0] * max(0, 2 - len(h))
        diff[1] = (diff[1] - 1) % p
        g = _poly_gcd(f, _poly_trim(diff), p)
        if len(g) > 1 or not g:
            return False
    return True


def smallest_irreducible(p: int, d: int) -> Tuple[int, ...]:
    """Lexicographically smallest monic irreducible of degree d, low-degree coefficients compared first"""
    for lower in itertools.product(range(p), repeat=d):
        candidate = lower + (1,)
        if is_irreducible(candidate, p):
            return candidate
    raise FieldParameterError(f"no irreducible polynomial of degree {d} over GF({p})")


class Field:
    """
    The finite field GF(p^d).

    Attributes:
     - p, d, size: characteristic, degree over the prime field and p^d.
     - modulus: monic irreducible polynomial of degree d (tuple, lowest degree first).
     - generator: smallest element encoding of multiplicative order p^d - 1.
    """

    def __init__(self, p: int, d: int):
        if not is_prime(p):
            raise FieldParameterError(f"characteristic {p} is not prime")
        if d < 1:
            raise FieldParameterError(f"extension degree {d} must be positive")
        size = p**d
        if size > settings.field_size_cap:
            raise FieldParameterError(
                f"GF({p}^{d}) has {size} elements, above the cap {settings.field_size_cap}"
            )
        self.p = p
        self.d = d
        self.size = size
        self.modulus: Tuple[int, ...] = smallest_irreducible(p, d)
        self._subfield_cache: Dict[int, List[int]] = {}
        self._coordinate_cache: Dict[int, np.ndarray] = {}

        self._exp = None
        self._log = None
        self._add_table = None
        self.generator = self._find_generator()
        if size <= settings.log_table_cap:
            self._build_log_tables()
        if p != 2 and d > 1 and size <= settings.add_table_cap:
            elements = np.arange(size, dtype=np.int64)
            self._add_table = self._add_digits(elements[:, None], elements[None, :])

    # ---- construction helpers

    def _digits(self, a: int) -> List[int]:
        digits = []
        for _ in range(self.d):
            digits.append(a % self.p)
            a //= self.p
        return _poly_trim(digits)

    def _encode(self, coeffs: Sequence[int]) -> int:
        value = 0
        for c in reversed(coeffs):
            value = value * self.p + c
        return value

    def _mul_slow(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a * b) % self.p
        return self._encode(
            _poly_mulmod(self._digits(a), self._digits(b), list(self.modulus), self.p)
        )

    def _pow_slow(self, a: int, e: int) -> int:
        result = 1
        while e > 0:
            if e & 1:
                result = self._mul_slow(result, a)
            a = self._mul_slow(a, a)
            e >>= 1
        return result

    def _find_generator(self) -> int:
        order = self.size - 1
        if order == 1:
            return 1
        factors = prime_factors(order)
        for candidate in range(2, self.size):
            if all(self._pow_slow(candidate, order // f) != 1 for f in factors):
                return candidate
        raise FieldParameterError(f"no primitive element in GF({self.p}^{self.d})")

    def _build_log_tables(self):
        order = self.size - 1
        exp = np.zeros(2 * order, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        value = 1
        for i in range(order):
            exp[i] = value
            log[value] = i
            value = self._mul_slow(value, self.generator)
        if value != 1:
            raise FieldParameterError("generator order check failed while tabulating")
        exp[order:] = exp[:order]
        self._exp = exp
        self._log = log

    def _add_digits(self, a, b):
        """Digitwise addition mod p, works for ints and numpy arrays alike"""
        p = self.p
        result = 0 * (a + b)
        place = 1
        for _ in range(self.d):
            result = result + ((a % p + b % p) % p) * place
            a = a // p
            b = b // p
            place *= p
        return result

    def _neg_digits(self, a):
        p = self.p
        result = 0 * a
        place = 1
        for _ in range(self.d):
            result = result + ((p - a % p) % p) * place
            a = a // p
            place *= p
        return result

    # ---- identity

    def __eq__(self, other):
        return (
            isinstance(other, Field)
            and self.p == other.p
            and self.d == other.d
            and self.modulus == other.modulus
        )

    def __hash__(self):
        return hash((self.p, self.d, self.modulus))

    def __repr__(self):
        return f"GF({self.p}^{self.d})" if self.d > 1 else f"GF({self.p})"

    def describe(self) -> dict:
        """Serialized form (p, d, modulus)"""
        return {"p": self.p, "d": self.d, "modulus": list(self.modulus)}

    def check_element(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise FieldMismatchError(f"{a} is not an element encoding of {self}")
        return a

    def element(self, a: int) -> "FieldElement":
        return FieldElement(self, self.check_element(int(a)))

    def elements(self) -> List["FieldElement"]:
        return [FieldElement(self, a) for a in range(self.size)]

    # ---- scalar arithmetic on encodings

    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.d == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return int(self._add_table[a, b])
        return self._add_digits(a, b)

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.d == 1:
            return (-a) % self.p
        return self._neg_digits(a)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self._exp is not None:
            return int(self._exp[self._log[a] + self._log[b]])
        return self._mul_slow(a, b)

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionFieldError(f"cannot invert zero in {self}")
        if self._exp is not None:
            return int(self._exp[(self.size - 1 - self._log[a]) % (self.size - 1)])
        return self._pow_slow(a, self.size - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a = self.inv(a)
            e = -e
        if a == 0:
            return 1 if e == 0 else 0
        if self._exp is not None:
            return int(self._exp[(int(self._log[a]) * e) % (self.size - 1)])
        return self._pow_slow(a, e % (self.size - 1))

    def frobenius(self, a: int, r: int = 1) -> int:
        """a^(p^r)"""
        if a == 0:
            return 0
        return self.pow(a, pow(self.p, r % self.d, self.size - 1) if self.size > 2 else 1)

    def subfield_size(self, s: int) -> int:
        """q with q^s = p^d; s must divide d"""
        if s < 1 or self.d % s != 0:
            raise FieldParameterError(f"{s} does not divide the extension degree {self.d} of {self}")
        return self.p ** (self.d // s)

    def norm(self, a: int, s: int) -> int:
        """Relative norm to the subfield GF(q), q^s = |field|: a^((q^s - 1)/(q - 1))"""
        q = self.subfield_size(s)
        result = self.pow(a, (self.size - 1) // (q - 1))
        if self.pow(result, q) != result:
            raise FieldParameterError(f"norm of {a} left the subfield GF({q})")
        return result

    def subfield_elements(self, s: int) -> List[int]:
        """Encodings of GF(q) inside the field, ascending; q^s = |field|"""
        if s not in self._subfield_cache:
            q = self.subfield_size(s)
            self._subfield_cache[s] = [a for a in range(self.size) if self.pow(a, q) == a]
        return self._subfield_cache[s]

    def is_in_subfield(self, a: int, s: int) -> bool:
        elements = self.subfield_elements(s)
        i = bisect.bisect_left(elements, self.check_element(a))
        return i < len(elements) and elements[i] == a

    def subfield_generator(self, s: int) -> int:
        """generator^((q^s - 1)/(q - 1)) generates GF(q)^x"""
        q = self.subfield_size(s)
        return self.pow(self.generator, (self.size - 1) // (q - 1))

    def subfield_coordinates(self, s: int) -> np.ndarray:
        """
        Coordinates of every element over GF(q) in the basis 1, g, ..., g^(s-1)
        of the field generator g. Row a holds the s coordinates of element a,
        themselves given as encodings of subfield elements.
        """
        if s in self._coordinate_cache:
            return self._coordinate_cache[s]
        sub = np.array(self.subfield_elements(s), dtype=np.int64)
        q = len(sub)
        values = np.zeros(1, dtype=np.int64)
        coords = np.zeros((1, 0), dtype=np.int64)
        for i in range(s):
            terms = self.mul_vec(sub, self.pow(self.generator, i))
            values = self.add_vec(values[:, None], terms[None, :]).reshape(-1)
            coords = np.concatenate(
                [np.repeat(coords, q, axis=0), np.tile(sub, len(coords))[:, None]], axis=1
            )
        table = np.zeros((self.size, s), dtype=np.int64)
        table[values] = coords
        self._coordinate_cache[s] = table
        return table

    # ---- vectorised kernels on numpy arrays of encodings (broadcasting)

    def add_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.d == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a, b]
        return self._add_digits(a, b)

    def neg_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if self.p == 2:
            return a
        if self.d == 1:
            return (-a) % self.p
        return self._neg_digits(a)

    def sub_vec(self, a, b) -> np.ndarray:
        return self.add_vec(a, self.neg_vec(b))

    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        if self._exp is not None:
            product = self._exp[self._log[a] + self._log[b]]
            return np.where((a == 0) | (b == 0), 0, product)
        if self.d == 1:
            return (a * b) % self.p
        return np.frompyfunc(self.mul, 2, 1)(a, b).astype(np.int64)

    def pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            return self.pow_vec(self.inv_vec(a), -e)
        if self._exp is not None:
            powered = self._exp[(self._log[a] * e) % (self.size - 1)]
            return np.where(a == 0, 0, powered)
        return np.frompyfunc(lambda x: self.pow(x, e), 1, 1)(a).astype(np.int64)

    def inv_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise ZeroDivisionFieldError(f"cannot invert zero in {self}")
        if self._exp is not None:
            return self._exp[(self.size - 1 - self._log[a]) % (self.size - 1)]
        return np.frompyfunc(self.inv, 1, 1)(a).astype(np.int64)


@lru_cache(maxsize=None)
def field_new(p: int, d: int = 1) -> Field:
    """Deterministic GF(p^d); repeated calls share one instance"""
    return Field(p, d)


def field_of_size(size: int) -> Field:
    p, d = prime_power(size)
    return field_new(p, d)


@dataclass(frozen=True)
class FieldElement:
    """An element of a Field, held as its integer encoding"""

    field: Field
    value: int

    def _other(self, other) -> Optional[int]:
        """Encoding of other in this field, None for operand types the field does not know"""
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} and {other.field} do not interoperate")
            return other.value
        if isinstance(other, (int, np.integer)):
            return self.field.check_element(int(other))
        return None

    def _binary(self, op, other):
        value = self._other(other)
        if value is None:
            return NotImplemented
        return FieldElement(self.field, op(self.value, value))

    def __add__(self, other):
        return self._binary(self.field.add, other)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binary(self.field.sub, other)

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.value))

    def __mul__(self, other):
        return self._binary(self.field.mul, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binary(self.field.div, other)

    def __pow__(self, e: int):
        return FieldElement(self.field, self.field.pow(self.value, e))

    def __bool__(self):
        return self.value != 0

    def __int__(self):
        return self.value

    def __repr__(self):
        return f"{self.value}@{self.field!r}"


def _same_field(a: FieldElement, b: FieldElement) -> Field:
    if a.field != b.field:
        raise FieldMismatchError(f"{a.field} and {b.field} do not interoperate")
    return a.field


def add(a: FieldElement, b: FieldElement) -> FieldElement:
    field = _same_field(a, b)
    return FieldElement(field, field.add(a.value, b.value))


def mul(a: FieldElement, b: FieldElement) -> FieldElement:
    field = _same_field(a, b)
    return FieldElement(field, field.mul(a.value, b.value))


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.field, a.field.inv(a.value))


def power(a: FieldElement, e: int) -> FieldElement:
    return FieldElement(a.field, a.field.pow(a.value, e))


def frobenius(a: FieldElement, r: int) -> FieldElement:
    return FieldElement(a.field, a.field.frobenius(a.value, r))


def norm(a: FieldElement, s: int) -> FieldElement:
    return FieldElement(a.field, a.field.norm(a.value, s))


def subfield_elements(field: Field, s: int) -> List[FieldElement]:
    return [FieldElement(field, a) for a in field.subfield_elements(s)]


def is_in_subfield(a: FieldElement, s: int) -> bool:
    return a.field.is_in_subfield(a.value, s)
