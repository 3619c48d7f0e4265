"""Finite abelian groups as products of cyclic factors.

Groups are kept in invariant-factor form ``n_1 | n_2 | ... | n_r`` and written
additively.  Elements are residue vectors; the *rank* of an element is its
mixed-radix index with the last factor varying fastest, so rank 0 is the
identity and ``enumerate_elements`` yields elements in rank order.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Iterable, Iterator, Sequence

from .errors import (
    EmptyFactorList,
    FactorBelowTwo,
    MismatchedGroup,
    ParseError,
    PrimeDoesNotDivideOrder,
)
from .ntheory import factorize, is_prime, lcm


def _invariant_factors(factors: Iterable[int]) -> tuple[int, ...]:
    primes: dict[int, list[int]] = {}
    for n in factors:
        for p, e in factorize(n).items() if n > 1 else ():
            primes.setdefault(p, []).append(e)
    if not primes:
        return ()
    depth = max(len(v) for v in primes.values())
    out = []
    for level in range(depth):
        f = 1
        for p, exps in primes.items():
            exps = sorted(exps, reverse=True)
            if level < len(exps):
                f *= p ** exps[level]
        out.append(f)
    return tuple(reversed(out))


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group ``Z_{n_1} x ... x Z_{n_r}``.

    The constructor canonicalizes any factor list into invariant-factor form,
    so ``GroupSpec((4, 2)) == GroupSpec((2, 4))``.  Use :func:`make_group` when
    coordinates given against the original factor list must be translated.
    The empty factor tuple is the trivial group (quotients can produce it).
    """

    factors: tuple[int, ...]

    def __post_init__(self) -> None:
        facs = tuple(int(f) for f in self.factors)
        if any(f < 1 for f in facs):
            raise FactorBelowTwo(f"factors must be positive: {facs}")
        object.__setattr__(self, "factors", _invariant_factors(facs))

    @property
    def order(self) -> int:
        return prod(self.factors)

    @property
    def exponent(self) -> int:
        return self.factors[-1] if self.factors else 1

    @property
    def rank_count(self) -> int:
        return len(self.factors)

    @cached_property
    def _strides(self) -> tuple[int, ...]:
        strides = []
        s = 1
        for f in reversed(self.factors):
            strides.append(s)
            s *= f
        return tuple(reversed(strides))

    def is_cyclic(self) -> bool:
        return len(self.factors) <= 1

    def literal(self) -> str:
        if not self.factors:
            return "Z1"
        return "x".join(f"Z{f}" for f in self.factors)

    def __str__(self) -> str:
        return self.literal()

    # rank <-> coordinates
    def rank(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.factors):
            raise MismatchedGroup(f"{tuple(coords)} has wrong length for {self}")
        return sum((c % f) * s for c, f, s in zip(coords, self.factors, self._strides))

    def coords(self, rank: int) -> tuple[int, ...]:
        if not 0 <= rank < self.order:
            raise MismatchedGroup(f"rank {rank} out of range for {self}")
        out = []
        for f, s in zip(self.factors, self._strides):
            out.append((rank // s) % f)
        return tuple(out)

    def element(self, coords: Sequence[int] | int) -> GroupElement:
        if isinstance(coords, int):
            coords = (coords,)
        if len(coords) != len(self.factors):
            raise MismatchedGroup(f"{tuple(coords)} has wrong length for {self}")
        return GroupElement(self, tuple(c % f for c, f in zip(coords, self.factors)))

    def from_rank(self, rank: int) -> GroupElement:
        return GroupElement(self, self.coords(rank))

    # rank arithmetic, used by the hot paths
    def add_ranks(self, a: int, b: int) -> int:
        ca, cb = self.coords(a), self.coords(b)
        return self.rank([x + y for x, y in zip(ca, cb)])

    def neg_rank(self, a: int) -> int:
        return self.rank([-x for x in self.coords(a)])

    def sub_ranks(self, a: int, b: int) -> int:
        ca, cb = self.coords(a), self.coords(b)
        return self.rank([x - y for x, y in zip(ca, cb)])

    def scale_rank(self, c: int, a: int) -> int:
        return self.rank([c * x for x in self.coords(a)])

    def element_order(self, a: int) -> int:
        return lcm(*(f // gcd(f, x) for f, x in zip(self.factors, self.coords(a))))


@dataclass(frozen=True)
class GroupElement:
    group: GroupSpec
    coords: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.group.rank(self.coords)

    def _check(self, other: GroupElement) -> None:
        if other.group != self.group:
            raise MismatchedGroup(f"{other.group} vs {self.group}")

    def __add__(self, other: GroupElement) -> GroupElement:
        self._check(other)
        return self.group.element([x + y for x, y in zip(self.coords, other.coords)])

    def __neg__(self) -> GroupElement:
        return self.group.element([-x for x in self.coords])

    def __sub__(self, other: GroupElement) -> GroupElement:
        return self + (-other)

    def __mul__(self, c: int) -> GroupElement:
        return self.group.element([c * x for x in self.coords])

    __rmul__ = __mul__

    def __repr__(self) -> str:
        body = self.coords[0] if len(self.coords) == 1 else self.coords
        return f"<{body} in {self.group}>"


def combine(g: GroupElement, h: GroupElement) -> GroupElement:
    return g + h


def invert(g: GroupElement) -> GroupElement:
    return -g


def identity(G: GroupSpec) -> GroupElement:
    return GroupElement(G, (0,) * G.rank_count)


def enumerate_elements(G: GroupSpec) -> list[GroupElement]:
    return [GroupElement(G, c) for c in itertools.product(*(range(f) for f in G.factors))]


# ---------------------------------------------------------------------------
# Smith normal form and presentations


def smith_normal_form(matrix: Sequence[Sequence[int]]) -> tuple[list[int], list[list[int]]]:
    """Diagonal of the Smith form of an integer matrix plus the left transform.

    Returns ``(diag, U)`` with ``U`` unimodular (rows x rows) such that
    ``U @ A @ V`` is diagonal for some unimodular ``V`` and successive
    diagonal entries divide each other.  ``diag`` has ``rows`` entries, padded
    with zeros when the matrix is rank deficient.
    """
    A = [list(map(int, row)) for row in matrix]
    rows = len(A)
    cols = len(A[0]) if rows else 0
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]

    def swap_rows(i: int, j: int) -> None:
        A[i], A[j] = A[j], A[i]
        U[i], U[j] = U[j], U[i]

    def add_row(dst: int, src: int, c: int) -> None:
        A[dst] = [a + c * b for a, b in zip(A[dst], A[src])]
        U[dst] = [a + c * b for a, b in zip(U[dst], U[src])]

    def swap_cols(i: int, j: int) -> None:
        for row in A:
            row[i], row[j] = row[j], row[i]

    def add_col(dst: int, src: int, c: int) -> None:
        for row in A:
            row[dst] += c * row[src]

    diag: list[int] = []
    for t in range(min(rows, cols)):
        while True:
            nz = [(abs(A[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if A[i][j]]
            if not nz:
                break
            _, i, j = min(nz)
            swap_rows(t, i)
            swap_cols(t, j)
            dirty = False
            for i in range(t + 1, rows):
                if A[i][t]:
                    add_row(i, t, -(A[i][t] // A[t][t]))
                    dirty = dirty or A[i][t] != 0
            for j in range(t + 1, cols):
                if A[t][j]:
                    add_col(j, t, -(A[t][j] // A[t][t]))
                    dirty = dirty or A[t][j] != 0
            if dirty:
                continue
            bad = next(
                (i for i in range(t + 1, rows) for j in range(t + 1, cols) if A[i][j] % A[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad, 1)
        if A[t][t] < 0:
            A[t] = [-a for a in A[t]]
            U[t] = [-u for u in U[t]]
        diag.append(A[t][t])
    diag.extend([0] * (rows - len(diag)))
    return diag, U


def _presentation_map(
    moduli: Sequence[int], gens: Sequence[Sequence[int]]
) -> tuple[GroupSpec, list[list[int]]]:
    """Structure of ``Z^r / <diag(moduli), gens>`` and the coordinate map onto it."""
    r = len(moduli)
    relations = [[moduli[i] if i == j else 0 for j in range(r)] + [g[i] for g in gens] for i in range(r)]
    diag, U = smith_normal_form(relations)
    keep = [i for i, d in enumerate(diag) if d != 1]
    if any(diag[i] == 0 for i in keep):
        raise ValueError("presentation is not finite")
    target = tuple(diag[i] for i in keep)
    matrix = [[u % diag[i] for u in U[i]] for i in keep]
    spec = GroupSpec(target)
    assert spec.factors == target, "Smith form must already be canonical"
    return spec, matrix


def make_group(factors: Sequence[int]) -> GroupSpec:
    """Canonical group isomorphic to ``Z_{f_1} x ... x Z_{f_r}``.

    >>> make_group([2, 3]).factors
    (6,)
    >>> make_group([4, 2]).factors
    (2, 4)
    """
    factors = list(factors)
    if not factors:
        raise EmptyFactorList("need at least one cyclic factor")
    if any(int(f) < 2 for f in factors):
        raise FactorBelowTwo(f"factors must be >= 2: {factors}")
    return GroupSpec(tuple(factors))


@dataclass(frozen=True)
class Presentation:
    """A group as the user wrote it (``Z2xZ3``) plus the isomorphism to canonical form."""

    raw_factors: tuple[int, ...]
    group: GroupSpec
    matrix: tuple[tuple[int, ...], ...]

    @classmethod
    def from_factors(cls, factors: Sequence[int]) -> Presentation:
        group = make_group(factors)
        raw = tuple(int(f) for f in factors)
        if raw == group.factors:
            matrix = tuple(tuple(int(i == j) for j in range(len(raw))) for i in range(len(raw)))
        else:
            spec, m = _presentation_map(raw, [])
            assert spec == group
            matrix = tuple(tuple(row) for row in m)
        return cls(raw, group, matrix)

    def to_canonical(self, coords: Sequence[int] | int) -> GroupElement:
        if isinstance(coords, int):
            coords = (coords,)
        if len(coords) != len(self.raw_factors):
            raise MismatchedGroup(f"element {list(coords)} does not match {self.literal()}")
        return self.group.element([sum(a * c for a, c in zip(row, coords)) for row in self.matrix])

    def literal(self) -> str:
        return "x".join(f"Z{f}" for f in self.raw_factors)


_LITERAL = re.compile(r"^\s*z(\d+)(\s*[x*]\s*z(\d+))*\s*$", re.IGNORECASE)


def parse_presentation(literal: str) -> Presentation:
    if not _LITERAL.match(literal):
        raise ParseError(f"bad group literal {literal!r}; expected e.g. 'Z6' or 'Z2xZ4'")
    factors = [int(x) for x in re.findall(r"\d+", literal)]
    return Presentation.from_factors(factors)


def parse_group(literal: str) -> GroupSpec:
    """``"Z2xZ4"`` (case-insensitive, ``x`` separator) -> canonical GroupSpec."""
    return parse_presentation(literal).group


def abelian_groups(n: int) -> list[GroupSpec]:
    """All abelian groups of order ``n`` up to isomorphism, in a fixed order."""
    if n == 1:
        return [GroupSpec(())]

    def partitions(e: int, cap: int | None = None) -> Iterator[list[int]]:
        cap = e if cap is None else cap
        if e == 0:
            yield []
            return
        for first in range(min(e, cap), 0, -1):
            for rest in partitions(e - first, first):
                yield [first] + rest

    per_prime = [[[p ** a for a in part] for part in partitions(e)] for p, e in factorize(n).items()]
    out = []
    for combo in itertools.product(*per_prime):
        out.append(GroupSpec(tuple(f for part in combo for f in part)))
    return out


# ---------------------------------------------------------------------------
# quotients


@dataclass(frozen=True)
class QuotientMap:
    """Natural surjection ``sigma: source -> source/H``.

    ``map_matrix`` has one row per target factor; ``sigma(x)_i`` is
    ``sum_j map_matrix[i][j] * x_j  mod target.factors[i]``.
    """

    source: GroupSpec
    target: GroupSpec
    kernel_generators: tuple[GroupElement, ...]
    map_matrix: tuple[tuple[int, ...], ...]
    _rank_map: tuple[int, ...] = field(default=(), compare=False, repr=False)

    def apply(self, g: GroupElement) -> GroupElement:
        if g.group != self.source:
            raise MismatchedGroup(f"{g} is not in {self.source}")
        return self.target.element([sum(a * c for a, c in zip(row, g.coords)) for row in self.map_matrix])

    __call__ = apply

    def rank_map(self) -> tuple[int, ...]:
        """Target rank of every source rank."""
        if not self._rank_map:
            ranks = tuple(self.apply(g).rank for g in enumerate_elements(self.source))
            object.__setattr__(self, "_rank_map", ranks)
        return self._rank_map

    def kernel(self) -> list[GroupElement]:
        rm = self.rank_map()
        return [self.source.from_rank(r) for r in range(self.source.order) if rm[r] == 0]


def prime_index_quotient(G: GroupSpec, p: int) -> QuotientMap:
    """A surjection onto ``Z_p`` (kernel of order n/p), through the first factor p divides."""
    if not is_prime(p) or G.order % p:
        raise PrimeDoesNotDivideOrder(f"{p} does not divide |{G}| = {G.order}")
    i = next(i for i, f in enumerate(G.factors) if f % p == 0)
    r = G.rank_count
    row = tuple(int(j == i) for j in range(r))
    gens = [G.element([p if j == i else 0 for j in range(r)])]
    gens += [G.element([int(j == l) for j in range(r)]) for l in range(r) if l != i]
    return QuotientMap(G, GroupSpec((p,)), tuple(gens), (row,))


def quotient_by(G: GroupSpec, generators: Sequence[GroupElement]) -> QuotientMap:
    for g in generators:
        if g.group != G:
            raise MismatchedGroup(f"{g} is not in {G}")
    target, matrix = _presentation_map(G.factors, [g.coords for g in generators])
    return QuotientMap(G, target, tuple(generators), tuple(tuple(row) for row in matrix))


def subgroup_closure(G: GroupSpec, generators: Iterable[int]) -> frozenset[int]:
    """Ranks of the subgroup generated by the given ranks."""
    members = {0}
    frontier = [0]
    gens = [g for g in set(generators) if g]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = G.add_ranks(x, g)
                if y not in members:
                    members.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(members)


def subgroups(G: GroupSpec) -> list[tuple[frozenset[int], tuple[int, ...]]]:
    """Every subgroup as (member ranks, generating ranks), ordered by size.

    Brute force joins of cyclic subgroups; intended for |G| up to a few hundred.
    """
    found: dict[frozenset[int], tuple[int, ...]] = {}
    cyclic = {}
    for g in range(G.order):
        s = subgroup_closure(G, [g])
        cyclic.setdefault(s, (g,) if g else ())
    found.update(cyclic)
    frontier = list(found.items())
    while frontier:
        nxt = []
        for s, gens in frontier:
            for c, cg in cyclic.items():
                if c <= s:
                    continue
                joined = subgroup_closure(G, list(gens) + list(cg))
                if joined not in found:
                    found[joined] = tuple(gens) + tuple(cg)
                    nxt.append((joined, found[joined]))
        frontier = nxt
    return sorted(found.items(), key=lambda kv: (len(kv[0]), sorted(kv[0])))


def automorphisms(G: GroupSpec, limit: int | None = None) -> list[tuple[int, ...]] | None:
    """All automorphisms as rank permutations, or None if there are more than ``limit``.

    Enumerated by images of the standard generators: the image of the i-th
    generator must have order dividing ``n_i``, and the images chosen so far
    must generate a subgroup of the full size (injectivity on the prefix).
    """
    n = G.order
    r = G.rank_count
    elems = list(range(n))
    candidates = [[x for x in elems if G.factors[i] % G.element_order(x) == 0] for i in range(r)]
    coords = [G.coords(x) for x in elems]
    out: list[tuple[int, ...]] = []

    def build(images: list[int]) -> tuple[int, ...]:
        perm = []
        for c in coords:
            acc = [0] * r
            for ci, img in zip(c, images):
                ic = coords[img]
                for t in range(r):
                    acc[t] += ci * ic[t]
            perm.append(G.rank(acc))
        return tuple(perm)

    def rec(i: int, images: list[int], size_needed: int) -> bool:
        if i == r:
            out.append(build(images))
            return limit is None or len(out) <= limit
        need = size_needed * G.factors[i]
        for x in candidates[i]:
            if len(subgroup_closure(G, images + [x])) != need:
                continue
            if not rec(i + 1, images + [x], need):
                return False
        return True

    if r == 0:
        return [()]
    ok = rec(0, [], 1)
    return out if ok else None
