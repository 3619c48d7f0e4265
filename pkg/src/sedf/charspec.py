"""Characters of finite abelian groups, evaluated exactly in Z[w_L].

All character values of a group G live in one ring Z[w_L] with L the exponent
of G.  Elements of that ring are stored as integer vectors in the power basis
``1, w, ..., w^{phi(L)-1}``, i.e. reduced modulo the L-th cyclotomic
polynomial, so a character sum vanishes iff its reduced vector is zero.
Floating point only enters the alpha diagnostics.
"""

from __future__ import annotations

import cmath
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .errors import MismatchedGroup, PrincipalCharacter, SetSumVanishes, TotalVanishes
from .group import GroupElement, GroupSpec, enumerate_elements
from .groupring import GroupRingElement
from .ntheory import divisors

ALPHA_REL_TOL = 1e-9
CLUSTER_GAP = 1e-6


# ---------------------------------------------------------------------------
# cyclotomic polynomials


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    lead = den[-1]
    for i in range(len(out) - 1, -1, -1):
        c, r = divmod(num[i + len(den) - 1], lead)
        if r:
            raise ArithmeticError("inexact polynomial division")
        out[i] = c
        for j, d in enumerate(den):
            num[i + j] -= c * d
    if any(num[: len(den) - 1]):
        raise ArithmeticError("inexact polynomial division")
    return out


def _poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(L: int) -> tuple[int, ...]:
    """Coefficients of Phi_L, lowest degree first.

    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if L < 1:
        raise ValueError("L must be positive")
    num = [-1] + [0] * (L - 1) + [1]
    den = [1]
    for d in divisors(L):
        if d < L:
            den = _poly_mul(den, list(cyclotomic_polynomial(d)))
    return tuple(_poly_divexact(num, den))


@lru_cache(maxsize=None)
def _reduction_matrix(L: int) -> np.ndarray:
    """Row i is w_L^i written in the power basis of Z[w_L]."""
    phi = cyclotomic_polynomial(L)
    deg = len(phi) - 1
    M = np.zeros((L, deg), dtype=np.int64)
    cur = np.zeros(deg, dtype=np.int64)
    cur[0] = 1
    tail = np.array(phi[:-1], dtype=np.int64)
    for i in range(L):
        M[i] = cur
        top = cur[-1]
        cur = np.concatenate(([0], cur[:-1])) - top * tail
    M.flags.writeable = False
    return M


# ---------------------------------------------------------------------------


class CyclotomicInteger:
    """Exact element of Z[w_L]; canonical reduced coefficients."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence[int] | np.ndarray):
        deg = len(cyclotomic_polynomial(order)) - 1
        arr = np.array(coeffs, dtype=np.int64).reshape(-1)
        if arr.shape[0] != deg:
            raise ValueError(f"Z[w_{order}] elements need {deg} coefficients")
        arr.flags.writeable = False
        self.order = order
        self.coeffs = arr

    @classmethod
    def from_exponents(cls, order: int, counts: Sequence[int] | np.ndarray) -> CyclotomicInteger:
        """``sum_i counts[i] * w^i`` for an unreduced length-L vector."""
        counts = np.asarray(counts, dtype=np.int64)
        return cls(order, counts @ _reduction_matrix(order))

    @classmethod
    def root_of_unity(cls, order: int, e: int) -> CyclotomicInteger:
        return cls(order, _reduction_matrix(order)[e % order])

    @classmethod
    def integer(cls, order: int, c: int) -> CyclotomicInteger:
        return cls(order, c * _reduction_matrix(order)[0])

    def lift(self) -> np.ndarray:
        """Length-L exponent vector representing this element."""
        out = np.zeros(self.order, dtype=np.int64)
        out[: self.coeffs.shape[0]] = self.coeffs
        return out

    def _coerce(self, other: CyclotomicInteger | int) -> CyclotomicInteger:
        if isinstance(other, (int, np.integer)):
            return CyclotomicInteger.integer(self.order, int(other))
        if other.order != self.order:
            raise ValueError(f"orders differ: {self.order} vs {other.order}")
        return other

    def __add__(self, other: CyclotomicInteger | int) -> CyclotomicInteger:
        other = self._coerce(other)
        return CyclotomicInteger(self.order, self.coeffs + other.coeffs)

    __radd__ = __add__

    def __sub__(self, other: CyclotomicInteger | int) -> CyclotomicInteger:
        other = self._coerce(other)
        return CyclotomicInteger(self.order, self.coeffs - other.coeffs)

    def __neg__(self) -> CyclotomicInteger:
        return CyclotomicInteger(self.order, -self.coeffs)

    def __mul__(self, other: CyclotomicInteger | int) -> CyclotomicInteger:
        other = self._coerce(other)
        L = self.order
        prod = np.convolve(self.coeffs, other.coeffs)
        folded = np.zeros(L, dtype=np.int64)
        for start in range(0, prod.shape[0], L):
            chunk = prod[start : start + L]
            folded[: chunk.shape[0]] += chunk
        return CyclotomicInteger.from_exponents(L, folded)

    __rmul__ = __mul__

    def conj(self) -> CyclotomicInteger:
        """Complex conjugate (w -> w^{-1})."""
        lifted = self.lift()
        return CyclotomicInteger.from_exponents(self.order, np.roll(lifted[::-1], 1))

    def times_root(self, e: int) -> CyclotomicInteger:
        return CyclotomicInteger.from_exponents(self.order, np.roll(self.lift(), e % self.order))

    def is_zero(self) -> bool:
        return not self.coeffs.any()

    def is_rational(self) -> bool:
        return not self.coeffs[1:].any()

    def to_int(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return int(self.coeffs[0])

    def to_complex(self) -> complex:
        L = self.order
        return complex(sum(int(c) * cmath.exp(2j * cmath.pi * i / L) for i, c in enumerate(self.coeffs) if c))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, np.integer)):
            other = CyclotomicInteger.integer(self.order, int(other))
        if not isinstance(other, CyclotomicInteger):
            return NotImplemented
        return self.order == other.order and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.order, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        terms = [f"{c}*w^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"Z[w_{self.order}]({' + '.join(terms) or '0'})"


def is_zero(v: CyclotomicInteger) -> bool:
    return v.is_zero()


# ---------------------------------------------------------------------------
# characters


@lru_cache(maxsize=64)
def _exponent_table(G: GroupSpec) -> np.ndarray:
    """E[g, h] with chi_g(h) = w_L^{E[g, h]}."""
    L = G.exponent
    if G.rank_count == 0:
        return np.zeros((1, 1), dtype=np.int64)
    coords = np.array([e.coords for e in enumerate_elements(G)], dtype=np.int64)
    weights = np.array([L // f for f in G.factors], dtype=np.int64)
    E = ((coords * weights) @ coords.T) % L
    E.flags.writeable = False
    return E


@dataclass(frozen=True)
class Character:
    """chi_g(h) = w_L^{sum_i g_i h_i L / n_i}."""

    group: GroupSpec
    index: GroupElement

    def __post_init__(self) -> None:
        if self.index.group != self.group:
            raise MismatchedGroup(f"{self.index} is not in {self.group}")

    @classmethod
    def of(cls, G: GroupSpec, g: GroupElement | int | Sequence[int]) -> Character:
        if isinstance(g, GroupElement):
            return cls(G, g)
        if isinstance(g, int):
            return cls(G, G.from_rank(g) if G.rank_count != 1 else G.element(g))
        return cls(G, G.element(g))

    @property
    def is_principal(self) -> bool:
        return not any(self.index.coords)

    def exponent(self, h: GroupElement) -> int:
        L = self.group.exponent
        return sum(g * x * (L // f) for g, x, f in zip(self.index.coords, h.coords, self.group.factors)) % L

    def __call__(self, h: GroupElement) -> CyclotomicInteger:
        return CyclotomicInteger.root_of_unity(self.group.exponent, self.exponent(h))


def principal_character(G: GroupSpec) -> Character:
    return Character(G, GroupElement(G, (0,) * G.rank_count))


def characters(G: GroupSpec) -> list[Character]:
    return [Character(G, g) for g in enumerate_elements(G)]


def char_sum(chi: Character, D: GroupRingElement) -> CyclotomicInteger:
    """chi(sum a_g g) = sum a_g chi(g), exactly."""
    if D.group != chi.group:
        raise MismatchedGroup(f"{D.group} vs {chi.group}")
    G = D.group
    L = G.exponent
    counts = np.zeros(L, dtype=np.int64)
    np.add.at(counts, _exponent_table(G)[chi.index.rank], D.coeffs)
    return CyclotomicInteger.from_exponents(L, counts)


def _spectrum_matrix(D: GroupRingElement) -> np.ndarray:
    G = D.group
    n, L = G.order, G.exponent
    E = _exponent_table(G)
    flat = (np.arange(n)[:, None] * L + E).reshape(-1)
    counts = np.zeros(n * L, dtype=np.int64)
    np.add.at(counts, flat, np.tile(D.coeffs, n))
    return counts.reshape(n, L) @ _reduction_matrix(L)


def spectrum(D: GroupRingElement) -> dict[GroupElement, CyclotomicInteger]:
    """Full Fourier transform ``g -> chi_g(D)`` in rank order."""
    G = D.group
    rows = _spectrum_matrix(D)
    return {G.from_rank(r): CyclotomicInteger(G.exponent, rows[r]) for r in range(G.order)}


def inverse_spectrum(G: GroupSpec, values: dict[GroupElement, CyclotomicInteger] | Sequence[CyclotomicInteger]) -> GroupRingElement:
    """Recover D from its spectrum via ``a_h = (1/n) sum_g chi_g(D) conj(chi_g(h))``.

    Raises ArithmeticError if the sums are not integers divisible by n, which
    would mean the input was not a spectrum of an integer element.
    """
    if isinstance(values, dict):
        vals = [values[G.from_rank(r)] for r in range(G.order)]
    else:
        vals = list(values)
    n, L = G.order, G.exponent
    E = _exponent_table(G)
    lifted = np.stack([v.lift() for v in vals])  # n x L
    M = _reduction_matrix(L)
    coeffs = []
    t = np.arange(L)
    for h in range(n):
        # sum_g lifted[g, t + E[g, h]] is the coefficient of w^t after multiplying by w^{-E}
        idx = (t[None, :] + E[:, h][:, None]) % L
        acc = np.take_along_axis(lifted, idx, axis=1).sum(axis=0)
        red = acc @ M
        if red[1:].any() or red[0] % n:
            raise ArithmeticError(f"inverse transform at rank {h} is not an integer multiple of {n}")
        coeffs.append(int(red[0]) // n)
    return GroupRingElement(G, coeffs)


def nonvanishing_character(D: GroupRingElement) -> Character | None:
    """Some non-principal chi with chi(D) != 0, or None when D is constant (D = tG)."""
    G = D.group
    rows = _spectrum_matrix(D)
    for r in range(1, G.order):
        if rows[r].any():
            return Character(G, G.from_rank(r))
    return None


def orthogonality_defects(G: GroupSpec) -> tuple[int, int]:
    """Counts of failures of both orthogonality relations, evaluated exactly.

    Row relation: sum_g chi(g) conj(psi(g)) = n [chi = psi].
    Column relation: sum_chi chi(g) conj(chi(h)) = n [g = h].
    Products of roots of unity are taken as exponent differences, summed as
    exponent counts and then reduced modulo Phi_L.
    """
    n, L = G.order, G.exponent
    E = _exponent_table(G)
    M = _reduction_matrix(L)
    expected = np.zeros((n * n, M.shape[1]), dtype=np.int64)
    expected[np.arange(n) * (n + 1), 0] = n

    def check(rows_a: np.ndarray, rows_b: np.ndarray) -> int:
        diff = (rows_a[:, None, :] - rows_b[None, :, :]) % L  # (a, b, summation index)
        flat = (np.arange(n * n)[:, None] * L + diff.reshape(n * n, n)).reshape(-1)
        counts = np.bincount(flat, minlength=n * n * L).reshape(n * n, L).astype(np.int64)
        red = counts @ M
        return int(np.any(red != expected, axis=1).sum())

    return check(E, E), check(E.T, E.T)


# ---------------------------------------------------------------------------
# EDE diagnostics


def _common_group(Ds: Sequence[GroupRingElement]) -> GroupSpec:
    G = Ds[0].group
    for D in Ds[1:]:
        if D.group != G:
            raise MismatchedGroup(f"{D.group} vs {G}")
    return G


@dataclass
class CharacterIdentityReport:
    character: Character
    mu: int
    values: list[CyclotomicInteger]
    ok_per_set: list[bool]

    @property
    def ok(self) -> bool:
        return all(self.ok_per_set)


def verify_character_identity(Ds: Sequence[GroupRingElement], mu: int, chi: Character) -> CharacterIdentityReport:
    """Check ``sum_{l != j} chi(D_j) conj(chi(D_l)) = -mu`` exactly for each j.

    Holds for any system with ``sum_{l != j} D_j D_l^{-1} = lambda G - mu e``
    and any non-principal chi; SEDFs over G give mu = lambda.
    """
    G = _common_group(Ds)
    if chi.group != G:
        raise MismatchedGroup(f"{chi.group} vs {G}")
    if chi.is_principal:
        raise PrincipalCharacter("the identity needs a non-principal character")
    vals = [char_sum(chi, D) for D in Ds]
    total = sum(vals[1:], vals[0])
    sums = [v * (total - v).conj() for v in vals]
    return CharacterIdentityReport(chi, mu, sums, [s == -mu for s in sums])


class SplitVerdict(enum.Enum):
    ALLOWED = "allowed"
    VIOLATION = "violation"
    NOT_APPLICABLE = "not_applicable"
    THREE_VALUED = "three_valued"


@dataclass
class CharacterProfile:
    character: Character
    values: list[CyclotomicInteger]
    total: CyclotomicInteger
    alphas: list[float]
    exact_alphas: list[Fraction] | None
    classes: list[tuple[float, int]]
    split: tuple[int, int] | None
    consistent: bool
    ratio_alphas: list[complex] = field(default_factory=list)

    @property
    def m(self) -> int:
        return len(self.values)


def alpha_profile(Ds: Sequence[GroupRingElement], mu: int, chi: Character) -> CharacterProfile:
    """alpha_j with chi(D_j) = alpha_j chi(sum D), computed two ways and cross-checked.

    ``alphas`` come from ``N_j / (N_j - mu)`` with ``N_j = |chi(D_j)|^2``;
    ``ratio_alphas`` are the complex ratios chi(D_j)/chi(total).  ``consistent``
    records agreement within ALPHA_REL_TOL (it fails on data that is not an
    EDE system, which is reported rather than raised).
    """
    if mu <= 0:
        raise ValueError("mu must be positive")
    G = _common_group(Ds)
    if chi.group != G:
        raise MismatchedGroup(f"{chi.group} vs {G}")
    vals = [char_sum(chi, D) for D in Ds]
    total = sum(vals[1:], vals[0])
    if total.is_zero():
        raise TotalVanishes(f"chi_{chi.index.coords} vanishes on the total")
    norms = [v * v.conj() for v in vals]
    for j, nv in enumerate(norms):
        if (nv - mu).is_zero():
            raise SetSumVanishes(f"|chi(D_{j})|^2 equals mu={mu}")
    exact = None
    if all(nv.is_rational() for nv in norms):
        exact = [Fraction(nv.to_int(), nv.to_int() - mu) for nv in norms]
        alphas = [float(a) for a in exact]
    else:
        fl = [nv.to_complex().real for nv in norms]
        alphas = [x / (x - mu) for x in fl]
    tc = total.to_complex()
    ratios = [v.to_complex() / tc for v in vals]
    consistent = all(
        abs(r - a) <= ALPHA_REL_TOL * max(1.0, abs(a)) for r, a in zip(ratios, alphas)
    )

    if exact is not None:
        groups: dict[Fraction, int] = {}
        for a in exact:
            groups[a] = groups.get(a, 0) + 1
        classes = sorted((float(a), c) for a, c in groups.items())
    else:
        classes = []
        for a in sorted(alphas):
            if classes and abs(a - classes[-1][0]) <= CLUSTER_GAP * max(1.0, abs(a)):
                classes[-1] = (classes[-1][0], classes[-1][1] + 1)
            else:
                classes.append((a, 1))
    m = len(Ds)
    if len(classes) == 1:
        split: tuple[int, int] | None = (0, m)
    elif len(classes) == 2:
        a, b = sorted(c for _, c in classes)
        split = (a, b)
    else:
        split = None
    return CharacterProfile(chi, vals, total, alphas, exact, classes, split, consistent, ratios)


def split_check(profile: CharacterProfile) -> SplitVerdict:
    """Flag the split shapes that cannot occur for genuine EDE data with m > 3."""
    m = profile.m
    if m <= 3:
        return SplitVerdict.NOT_APPLICABLE
    if profile.split is None:
        return SplitVerdict.THREE_VALUED
    a, b = profile.split
    if a in (0, 1) or a == b:
        return SplitVerdict.VIOLATION
    return SplitVerdict.ALLOWED


def split_shape_excluded(a: int, b: int) -> bool:
    """Pure shape test: (0,m), (1,m-1) and (m/2,m/2) are excluded."""
    a, b = sorted((a, b))
    return a in (0, 1) or a == b
