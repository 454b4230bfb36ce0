"""
Finite Field Arithmetic
Exact GF(p^k) arithmetic in a pinned polynomial basis.

Elements are encoded as integers 0 <= v < q with v = sum(c_i * p**i), where
c_i is the coefficient of x**i. Multiplication goes through exponent/log
tables built once per field from exact polynomial arithmetic; no floating
point is used anywhere in this module.
"""

from functools import cached_property, lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple, Union

import numpy as np

from ..core.exceptions import FieldError
from ..utils.logging import get_logger

logger = get_logger(__name__)

Poly = Tuple[int, ...]  # coefficients, lowest degree first


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test."""
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power(q: int) -> Optional[Tuple[int, int]]:
    """Return (p, k) with q = p**k, or None when q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q and q % p != 0:
        p += 1
    if q % p != 0:
        p = q
    k, rest = 0, q
    while rest % p == 0:
        rest //= p
        k += 1
    return (p, k) if rest == 1 and is_prime(p) else None


def _trim(poly: List[int]) -> List[int]:
    while poly and poly[-1] == 0:
        poly.pop()
    return poly


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> List[int]:
    """Remainder of a modulo b over GF(p); b must be monic."""
    rem = _trim([c % p for c in a])
    db = len(b) - 1
    while len(rem) - 1 >= db and rem:
        coef = rem[-1]
        shift = len(rem) - 1 - db
        for i, bc in enumerate(b):
            rem[shift + i] = (rem[shift + i] - coef * bc) % p
        _trim(rem)
    return rem


def _monic_polys(p: int, degree: int):
    """All monic polynomials of a given degree, in lexicographic order."""
    for tail in product(range(p), repeat=degree):
        # tail is (a_{d-1}, ..., a_0); reverse to lowest-first
        yield tuple(reversed(tail)) + (1,)


def is_irreducible(poly: Sequence[int], p: int) -> bool:
    """Trial factorization: no monic factor of degree 1..deg/2."""
    degree = len(poly) - 1
    if degree < 1 or poly[-1] % p == 0:
        return False
    if degree == 1:
        return True
    for d in range(1, degree // 2 + 1):
        for candidate in _monic_polys(p, d):
            if not _poly_mod(poly, candidate, p):
                return False
    return True


@lru_cache(maxsize=None)
def canonical_irreducible(p: int, k: int) -> Poly:
    """Lexicographically least monic irreducible of degree k over GF(p).

    Order compares (a_{k-1}, ..., a_0) left to right, i.e. the integer
    sum(a_i * p**i) is minimal.
    """
    if k == 1:
        return (0, 1)
    for candidate in _monic_polys(p, k):
        if is_irreducible(candidate, p):
            return candidate
    raise FieldError(f"No irreducible polynomial of degree {k} over GF({p})")


class FiniteField:
    """The field GF(p^k) with a fixed monic irreducible modulus."""

    def __init__(self, p: int, k: int = 1, poly: Optional[Sequence[int]] = None):
        if not is_prime(p):
            raise FieldError(f"Field characteristic {p} is not prime")
        if k < 1:
            raise FieldError(f"Extension degree must be >= 1, got {k}")

        if poly is None:
            modulus = canonical_irreducible(p, k)
        else:
            modulus = tuple(int(c) % p for c in poly)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise FieldError(
                    f"Modulus must be monic of degree {k} (length {k + 1}), got {tuple(poly)}"
                )
            if not is_irreducible(modulus, p):
                raise FieldError(f"Polynomial {modulus} is reducible over GF({p})")

        self.p = p
        self.k = k
        self.q = p**k
        self.poly: Poly = modulus
        self._build_tables()
        logger.debug(f"Constructed GF({self.q}) = GF({p}^{k}) with modulus {self.poly}")

    # Construction helpers

    def _encode(self, coeffs: Sequence[int]) -> int:
        value, place = 0, 1
        for c in coeffs:
            value += (c % self.p) * place
            place *= self.p
        return value

    def _decode(self, value: int) -> Tuple[int, ...]:
        coeffs = []
        for _ in range(self.k):
            coeffs.append(value % self.p)
            value //= self.p
        return tuple(coeffs)

    def _poly_mul_encoded(self, a: int, b: int) -> int:
        pa, pb = self._decode(a), self._decode(b)
        prod = [0] * (2 * self.k - 1)
        for i, ca in enumerate(pa):
            if ca:
                for j, cb in enumerate(pb):
                    prod[i + j] += ca * cb
        return self._encode(_poly_mod(prod, self.poly, self.p) or [0])

    def _build_tables(self):
        """Find a primitive element and build exp/log tables."""
        order = self.q - 1
        factors = _prime_factors(order)
        generator = None
        for candidate in range(1, self.q):
            if order == 1 or all(
                self._slow_pow(candidate, order // f) != 1 for f in factors
            ):
                generator = candidate
                break
        if generator is None:  # pragma: no cover - impossible for a field
            raise FieldError(f"No primitive element found in GF({self.q})")

        exp = [0] * max(order, 1)
        log = [-1] * self.q
        value = 1
        for i in range(order):
            exp[i] = value
            log[value] = i
            value = self._poly_mul_encoded(value, generator)
        self._exp: List[int] = exp
        self._log: List[int] = log
        self.generator_value = generator

    def _slow_pow(self, base: int, exponent: int) -> int:
        result = 1
        while exponent:
            if exponent & 1:
                result = self._poly_mul_encoded(result, base)
            base = self._poly_mul_encoded(base, base)
            exponent >>= 1
        return result

    # Encoded arithmetic

    def add_values(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        result, place = 0, 1
        for _ in range(self.k):
            result += ((a % self.p + b % self.p) % self.p) * place
            a //= self.p
            b //= self.p
            place *= self.p
        return result

    def neg_value(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        if self.p == 2:
            return a
        return self._encode([-c for c in self._decode(a)])

    def sub_values(self, a: int, b: int) -> int:
        return self.add_values(a, self.neg_value(b))

    def mul_values(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.q - 1)]

    def inv_value(self, a: int) -> int:
        if a == 0:
            raise FieldError(f"Inversion of zero in GF({self.q})")
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def pow_value(self, a: int, exponent: int) -> int:
        """Square-and-multiply exponentiation on encoded values."""
        if exponent < 0:
            a = self.inv_value(a)
            exponent = -exponent
        result = 1
        base = a
        while exponent:
            if exponent & 1:
                result = self.mul_values(result, base)
            base = self.mul_values(base, base)
            exponent >>= 1
        return result

    # Element API

    def __call__(self, value: Union[int, Sequence[int]]) -> "FieldElement":
        """Build an element from an encoding or a coefficient vector."""
        if isinstance(value, (int, np.integer)):
            value = int(value)
            if self.k == 1:
                value %= self.p
            elif not 0 <= value < self.q:
                raise FieldError(f"Encoding {value} out of range for GF({self.q})")
            return FieldElement(self, value)
        coeffs = list(value)
        if len(coeffs) > self.k:
            raise FieldError(f"Expected at most {self.k} coefficients, got {len(coeffs)}")
        return FieldElement(self, self._encode(coeffs))

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def generator(self) -> "FieldElement":
        """A primitive element (the least encoding generating GF(q)*)."""
        return FieldElement(self, self.generator_value)

    def elements(self) -> List["FieldElement"]:
        return [FieldElement(self, v) for v in range(self.q)]

    def coefficients(self, value: int) -> Tuple[int, ...]:
        return self._decode(value)

    def top_coefficient(self, value: int) -> int:
        """Coefficient of x^(k-1); the "leftmost bit" for GF(2^k)."""
        return self._decode(value)[self.k - 1]

    def is_prime_subfield(self, value: int) -> bool:
        return value < self.p

    # Vectorized tables for graph builders

    def _digit_table(self, sign: int) -> np.ndarray:
        digits = np.array([self._decode(v) for v in range(self.q)], dtype=np.int64)
        places = np.array([self.p**i for i in range(self.k)], dtype=np.int64)
        combined = (digits[:, None, :] + sign * digits[None, :, :]) % self.p
        return combined @ places

    @cached_property
    def addition_table(self) -> np.ndarray:
        """Dense table T[a, b] = a + b on encodings."""
        table = self._digit_table(+1)
        table.setflags(write=False)
        return table

    @cached_property
    def subtraction_table(self) -> np.ndarray:
        """Dense table T[a, b] = a - b on encodings."""
        table = self._digit_table(-1)
        table.setflags(write=False)
        return table

    @cached_property
    def multiplication_table(self) -> np.ndarray:
        """Dense table T[a, b] = a * b on encodings."""
        exp = np.asarray(self._exp, dtype=np.int64)
        log = np.asarray(self._log, dtype=np.int64)
        table = exp[(log[:, None] + log[None, :]) % (self.q - 1)]
        table[0, :] = 0
        table[:, 0] = 0
        table.setflags(write=False)
        return table

    def power_values(self, exponent: int) -> np.ndarray:
        """x ** exponent for every encoding x, as an array."""
        return np.array([self.pow_value(v, exponent) for v in range(self.q)], dtype=np.int64)

    def quad_char_table(self) -> np.ndarray:
        """chi(v) for every encoding v, as an int8 array."""
        if self.p == 2:
            raise FieldError("Quadratic character requires an odd-order field")
        table = np.full(self.q, -1, dtype=np.int8)
        table[0] = 0
        # nonzero squares are the even powers of the generator
        for i in range(0, self.q - 1, 2):
            table[self._exp[i]] = 1
        return table

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FiniteField)
            and self.p == other.p
            and self.k == other.k
            and self.poly == other.poly
        )

    def __hash__(self) -> int:
        return hash((self.p, self.k, self.poly))

    def __repr__(self) -> str:
        return f"FiniteField(p={self.p}, k={self.k}, poly={self.poly})"


class FieldElement:
    """Immutable element of a FiniteField."""

    __slots__ = ("field", "value")

    def __init__(self, field: FiniteField, value: int):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElement is immutable")

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return self.field.coefficients(self.value)

    def _check(self, other: "FieldElement"):
        if not isinstance(other, FieldElement):
            raise FieldError(f"Cannot combine a field element with {type(other).__name__}")
        if other.field != self.field:
            raise FieldError(f"Mixed fields: GF({self.field.q}) and GF({other.field.q})")

    def __add__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.add_values(self.value, other.value))

    def __sub__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.sub_values(self.value, other.value))

    def __mul__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return FieldElement(self.field, self.field.mul_values(self.value, other.value))

    def __truediv__(self, other: "FieldElement") -> "FieldElement":
        self._check(other)
        return self * other.inverse()

    def __neg__(self) -> "FieldElement":
        return FieldElement(self.field, self.field.neg_value(self.value))

    def __pow__(self, exponent: int) -> "FieldElement":
        return FieldElement(self.field, self.field.pow_value(self.value, int(exponent)))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv_value(self.value))

    def is_zero(self) -> bool:
        return self.value == 0

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FieldElement)
            and other.field == self.field
            and other.value == self.value
        )

    def __hash__(self) -> int:
        return hash((self.field.q, self.field.poly, self.value))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"GF({self.field.q})<{self.coeffs}>"


def _prime_factors(n: int) -> List[int]:
    factors = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            factors.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        factors.append(n)
    return factors


_FIELD_CACHE: Dict[Tuple[int, int, Optional[Poly]], FiniteField] = {}


def ff_create(p: int, k: int = 1, poly: Optional[Sequence[int]] = None) -> FiniteField:
    """Create (or reuse) GF(p^k); deterministic for fixed (p, k, poly)."""
    key = (p, k, None if poly is None else tuple(poly))
    if key not in _FIELD_CACHE:
        _FIELD_CACHE[key] = FiniteField(p, k, poly)
    return _FIELD_CACHE[key]


def field_of_order(q: int) -> FiniteField:
    """GF(q) with the canonical modulus."""
    pk = prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    return ff_create(*pk)


def ff_arith(
    a: FieldElement, b: Union[FieldElement, int, None], op: str
) -> FieldElement:
    """Apply one of add, sub, mul, inv, pow; pow takes an integer exponent."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "pow":
        exponent = b.value if isinstance(b, FieldElement) else b
        return a ** int(exponent)
    raise FieldError(f"Unknown field operation {op!r}")


def quad_char(field: FiniteField, x: FieldElement) -> int:
    """Quadratic character: 0 at zero, +1 on nonzero squares, -1 otherwise."""
    if field.p == 2:
        raise FieldError(f"Quadratic character undefined on even-order GF({field.q})")
    if x.field != field:
        raise FieldError("Element does not belong to the given field")
    if x.value == 0:
        return 0
    return 1 if field.pow_value(x.value, (field.q - 1) // 2) == 1 else -1


def ff_norm(field: FiniteField, x: FieldElement) -> int:
    """Norm GF(p^k) -> GF(p): N(x) = x^(1 + p + ... + p^(k-1)), as a residue."""
    if x.field != field:
        raise FieldError("Element does not belong to the given field")
    exponent = (field.q - 1) // (field.p - 1)
    value = field.pow_value(x.value, exponent)
    if not field.is_prime_subfield(value):  # pragma: no cover - field theory
        raise FieldError(f"Norm of {x} left the prime subfield")
    return value
