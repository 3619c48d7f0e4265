"""Finite fields GF(p^d) with full log tables, cyclotomic classes and numbers.

Field elements are ints ``sum c_i p^i`` encoding the coefficient vector
``(c_0, ..., c_{d-1})`` of a polynomial in the generator x, so for prime
fields the encoding is the residue itself.  The modulus and the primitive
element are chosen deterministically (smallest candidate in that encoding
order) so every table here is reproducible.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property, lru_cache
from math import gcd, isqrt
from typing import Literal

from .errors import (
    DegreeZero,
    IndexDoesNotDivide,
    IndexOutOfRange,
    NotPrime,
    NotPrimePower,
    WrongResidueClass,
)
from .group import GroupSpec
from .ntheory import factorize, is_prime

MAX_FIELD_ORDER = 10 ** 6


def _digits(x: int, p: int, d: int) -> list[int]:
    out = []
    for _ in range(d):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(cs: list[int], p: int) -> int:
    v = 0
    for c in reversed(cs):
        v = v * p + c
    return v


def _polymod(a: list[int], mod: list[int], p: int) -> list[int]:
    """Remainder of a modulo a monic polynomial (coefficients low first)."""
    a = [c % p for c in a]
    dm = len(mod) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i]
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * mod[j]) % p
    return (a + [0] * dm)[:dm]


def _is_irreducible(mod: list[int], p: int) -> bool:
    d = len(mod) - 1
    if d == 1:
        return True
    # trial division by every monic polynomial of degree 1..d//2
    for deg in range(1, d // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            div = list(low) + [1]
            if not any(_polymod(mod, div, p)[:deg]):
                return False
    return True


def smallest_irreducible(p: int, d: int) -> tuple[int, ...]:
    """Monic irreducible of degree d with the smallest encoding of its lower coefficients."""
    if d == 1:
        return (0, 1)
    for v in range(p ** d):
        mod = _digits(v, p, d) + [1]
        if mod[0] == 0:
            continue
        if _is_irreducible(mod, p):
            return tuple(mod)
    raise AssertionError("an irreducible always exists")


@dataclass(frozen=True)
class FiniteField:
    """GF(p^d) defined by a monic irreducible ``modulus`` (low coefficients first)."""

    p: int
    d: int
    modulus: tuple[int, ...]

    @property
    def q(self) -> int:
        return self.p ** self.d

    @property
    def order(self) -> int:
        return self.q

    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        p, d = self.p, self.d
        return _undigits([(x + y) % p for x, y in zip(_digits(a, p, d), _digits(b, p, d))], p)

    def neg(self, a: int) -> int:
        if self.d == 1:
            return (-a) % self.p
        p, d = self.p, self.d
        return _undigits([(-x) % p for x in _digits(a, p, d)], p)

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def poly_mul(self, a: int, b: int) -> int:
        """Multiplication without tables."""
        if self.d == 1:
            return a * b % self.p
        p, d = self.p, self.d
        da, db = _digits(a, p, d), _digits(b, p, d)
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] += x * y
        return _undigits(_polymod(prod, list(self.modulus), p), p)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        t = self._tables
        return t.exp[(t.log[a] + t.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        t = self._tables
        return t.exp[(-t.log[a]) % (self.q - 1)]

    def power(self, a: int, e: int) -> int:
        out = 1
        base = a
        while e:
            if e & 1:
                out = self.poly_mul(out, base)
            base = self.poly_mul(base, base)
            e >>= 1
        return out

    def multiplicative_order(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        order = self.q - 1
        for r in factorize(self.q - 1) if self.q > 2 else ():
            while order % r == 0 and self.power(a, order // r) == 1:
                order //= r
        return order

    def elements(self) -> range:
        return range(self.q)

    def encode(self, a: int) -> int | list[int]:
        """JSON form: residue for prime fields, coefficient list (low first) otherwise."""
        return a if self.d == 1 else _digits(a, self.p, self.d)

    @cached_property
    def _tables(self) -> _LogTables:
        g = primitive_element(self)
        exp = [1] * (self.q - 1)
        for i in range(1, self.q - 1):
            exp[i] = self.poly_mul(exp[i - 1], g)
        log = [0] * self.q
        log[0] = -1
        for i, x in enumerate(exp):
            log[x] = i
        return _LogTables(g, exp, log)

    def log(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("log of 0")
        return self._tables.log[a]

    def exp(self, e: int) -> int:
        return self._tables.exp[e % (self.q - 1)]


@dataclass(frozen=True)
class _LogTables:
    generator: int
    exp: list[int]
    log: list[int]


@lru_cache(maxsize=64)
def make_field(p: int, d: int = 1) -> FiniteField:
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if d < 1:
        raise DegreeZero("degree must be >= 1")
    if p ** d > MAX_FIELD_ORDER:
        raise ValueError(f"GF({p}^{d}) is beyond desk scale")
    return FiniteField(p, d, smallest_irreducible(p, d))


def field_of_order(q: int) -> FiniteField:
    f = factorize(q) if q > 1 else {}
    if len(f) != 1:
        raise NotPrimePower(f"{q} is not a prime power")
    (p, d), = f.items()
    return make_field(p, d)


@lru_cache(maxsize=64)
def primitive_element(F: FiniteField) -> int:
    """First nonzero element, in encoding order, of multiplicative order q-1."""
    for a in range(1, F.q):
        if F.multiplicative_order(a) == F.q - 1:
            return a
    raise AssertionError("multiplicative group is cyclic")


# ---------------------------------------------------------------------------
# cyclotomy


@dataclass(frozen=True)
class CyclotomicStructure:
    field: FiniteField
    e: int

    @property
    def f(self) -> int:
        return (self.field.q - 1) // self.e

    @property
    def generator(self) -> int:
        return primitive_element(self.field)

    def class_of(self, x: int) -> int:
        return self.field.log(x) % self.e

    @cached_property
    def classes(self) -> tuple[tuple[int, ...], ...]:
        """C_i = alpha^i <alpha^e>, each listed as alpha^{i}, alpha^{i+e}, ..."""
        F = self.field
        return tuple(tuple(F.exp(i + j * self.e) for j in range(self.f)) for i in range(self.e))

    @cached_property
    def _class_table(self) -> list[int]:
        F = self.field
        return [-1] + [F.log(x) % self.e for x in range(1, F.q)]

    def table(self) -> list[list[int]]:
        return [[cyclotomic_number(self, i, j) for j in range(self.e)] for i in range(self.e)]


def cyclotomic_classes(F: FiniteField, e: int) -> CyclotomicStructure:
    if e < 1 or (F.q - 1) % e:
        raise IndexDoesNotDivide(f"{e} does not divide q-1 = {F.q - 1}")
    return CyclotomicStructure(F, e)


def cyclotomic_number(S: CyclotomicStructure, i: int, j: int) -> int:
    """(i, j)_e: number of x in C_i with x + 1 in C_j, by enumeration."""
    if not (0 <= i < S.e and 0 <= j < S.e):
        raise IndexOutOfRange(f"indices must lie in [0, {S.e})")
    F = S.field
    cls = S._class_table
    return sum(1 for x in S.classes[i] if cls[F.add(x, 1)] == j)


# ---------------------------------------------------------------------------
# quadratic forms

Form = Literal["s2+4t2", "s2+3t2", "x2+27y2"]


@dataclass(frozen=True)
class QuadraticRepresentation:
    target: int
    form: str
    values: tuple[int, int] | None

    def __bool__(self) -> bool:
        return self.values is not None


def _solutions(q: int, b: int) -> list[tuple[int, int]]:
    out = []
    for t in range(0, isqrt(q // b) + 1):
        r = q - b * t * t
        s = isqrt(r)
        if s * s == r:
            out.extend({(s, t), (-s, t)})
    return out


def quadratic_representation(q: int, form: Form) -> QuadraticRepresentation:
    """Normalized representation of q by one of the three forms, or an empty result.

    ``s2+4t2``: s = 1 (mod 4), preferring gcd(s, q) = 1 (the proper
    representation); for q a power of a prime = 3 (mod 4) only s = +-p^{d/2},
    t = 0 exists and is returned.  ``s2+3t2``: s = 1 (mod 6).
    ``x2+27y2``: x, y >= 0.  The second value is always reported >= 0 since
    its sign is not determined.
    """
    if q < 1:
        raise ValueError("q must be positive")
    if form == "s2+4t2":
        sols = [(s, t) for s, t in _solutions(q, 4) if s % 4 == 1]
        proper = [st for st in sols if gcd(st[0], q) == 1]
        pick = proper or sols
    elif form == "s2+3t2":
        pick = [(s, t) for s, t in _solutions(q, 3) if s % 6 == 1]
    elif form == "x2+27y2":
        pick = [(x, y) for x, y in _solutions(q, 27) if x >= 0]
    else:
        raise ValueError(f"unknown form {form!r}")
    if not pick:
        return QuadraticRepresentation(q, form, None)
    firsts = {s for s, _ in pick}
    if len(firsts) != 1:
        raise ArithmeticError(f"{q} has several normalized representations by {form}: {sorted(pick)}")
    return QuadraticRepresentation(q, form, min(pick))


def two_in_C0_cubed(p: int) -> bool:
    """Is 2 a cube in GF(p)?  Requires p prime, p = 1 (mod 6)."""
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    if p % 6 != 1:
        raise WrongResidueClass(f"{p} is not 1 mod 6")
    F = make_field(p, 1)
    return F.log(2) % 3 == 0


# ---------------------------------------------------------------------------


def additive_embedding(F: FiniteField) -> tuple[GroupSpec, list[int]]:
    """(Z_p^d, rank of each field element); a + bx + ... maps to coordinates (a, b, ...)."""
    G = GroupSpec((F.p,) * F.d)
    ranks = [G.rank(_digits(x, F.p, F.d)) for x in range(F.q)]
    return G, ranks
