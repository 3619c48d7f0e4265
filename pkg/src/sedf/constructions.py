"""Explicit SEDF families, each returned only after passing the verifier."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable

from .errors import BadCongruence, IndexDoesNotDivide, NotPrime, NotPrimePower, OrderTooSmall
from .gfield import FiniteField, additive_embedding, cyclotomic_classes, cyclotomic_number, field_of_order
from .group import GroupSpec
from .groupring import SedfFamily, verify_sedf
from .ntheory import is_prime, prime_power

CONSTRUCTION_NAMES = (
    "singletons",
    "lambda1_two_set",
    "paley_type",
    "cyclotomic_e",
    "theorem_4_3",
    "theorem_4_6",
)


@dataclass(frozen=True)
class ConstructionId:
    name: str
    parameters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.name not in CONSTRUCTION_NAMES:
            raise ValueError(f"unknown construction {self.name!r}")

    def __str__(self) -> str:
        return f"{self.name}({', '.join(map(str, self.parameters))})"


class ConstructionRejected(Exception):
    """The (i, e/2)_e were not all equal; carries the full cyclotomic-number table."""

    def __init__(self, q: int, e: int, column: list[int], table: list[list[int]]):
        self.q, self.e, self.column, self.table = q, e, column, table
        super().__init__(f"cyclotomic numbers (i, {e // 2})_{e} over GF({q}) are not all equal: {column}")


def _checked(family: SedfFamily, cid: ConstructionId) -> SedfFamily:
    report = verify_sedf(family)
    if not report.ok:
        raise AssertionError(f"{cid} produced a family that fails verification: {report.problems or report.defects}")
    return family


def _field_family(F: FiniteField, sets: list[tuple[int, ...]], lam: int) -> SedfFamily:
    G, ranks = additive_embedding(F)
    return SedfFamily.from_sets(G, [[ranks[x] for x in s] for s in sets], lam)


def singletons(n: int) -> SedfFamily:
    """(n, n, 1, 1)-SEDF over Z_n: every element on its own."""
    if n < 2:
        raise OrderTooSmall(f"n must be >= 2, got {n}")
    G = GroupSpec((n,))
    return _checked(SedfFamily.from_sets(G, [[x] for x in range(n)], 1), ConstructionId("singletons", (n,)))


def lambda1_two_set(k: int) -> SedfFamily:
    """(k^2+1, 2, k, 1)-SEDF over Z_{k^2+1}: {0..k-1} and {k, 2k, ..., k^2}."""
    if k < 1:
        raise OrderTooSmall(f"k must be >= 1, got {k}")
    n = k * k + 1
    G = GroupSpec((n,))
    fam = SedfFamily.from_sets(G, [range(k), [k * i for i in range(1, k + 1)]], 1)
    return _checked(fam, ConstructionId("lambda1_two_set", (k,)))


def _require_q(q: int) -> FiniteField:
    if prime_power(q) is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q % 4 != 1:
        raise BadCongruence(f"{q} is not 1 mod 4")
    return field_of_order(q)


def paley_type(q: int) -> SedfFamily:
    """(q, 2, (q-1)/2, (q-1)/4)-SEDF: nonzero squares and non-squares of GF(q)."""
    F = _require_q(q)
    S = cyclotomic_classes(F, 2)
    fam = _field_family(F, [S.classes[0], S.classes[1]], (q - 1) // 4)
    return _checked(fam, ConstructionId("paley_type", (q,)))


def cyclotomic_table(q: int, e: int) -> list[list[int]]:
    S = cyclotomic_classes(field_of_order(q), e)
    return S.table()


def cyclotomic_sedf(q: int, e: int) -> SedfFamily:
    """{C_0^e, C_{e/2}^e} when every (i, e/2)_e is equal; else ConstructionRejected."""
    F = _require_q(q)
    if e < 2 or e % 2 or (q - 1) % e:
        raise IndexDoesNotDivide(f"e={e} must be even and divide q-1={q - 1}")
    S = cyclotomic_classes(F, e)
    half = e // 2
    column = [cyclotomic_number(S, i, half) for i in range(e)]
    if len(set(column)) != 1:
        raise ConstructionRejected(q, e, column, S.table())
    lam = (q - 1) // (e * e)
    assert column[0] == lam
    fam = _field_family(F, [S.classes[0], S.classes[half]], lam)
    return _checked(fam, ConstructionId("cyclotomic_e", (q, e)))


def theorem_4_3(t: int) -> SedfFamily:
    """(q, 2, (q-1)/4, (q-1)/16)-SEDF for a prime power q = 1 + 16 t^2."""
    q = 1 + 16 * t * t
    if t < 1 or prime_power(q) is None:
        raise NotPrimePower(f"1 + 16*{t}^2 = {q} is not a prime power")
    return cyclotomic_sedf(q, 4)


def theorem_4_6(t: int) -> SedfFamily:
    """(p, 2, (p-1)/6, (p-1)/36)-SEDF for a prime p = 1 + 108 t^2."""
    p = 1 + 108 * t * t
    if t < 1 or not is_prime(p):
        raise NotPrime(f"1 + 108*{t}^2 = {p} is not prime")
    return cyclotomic_sedf(p, 6)


BUILDERS: dict[str, Callable[..., SedfFamily]] = {
    "singletons": singletons,
    "lambda1_two_set": lambda1_two_set,
    "paley_type": paley_type,
    "cyclotomic_e": cyclotomic_sedf,
    "theorem_4_3": theorem_4_3,
    "theorem_4_6": theorem_4_6,
}


def build(cid: ConstructionId) -> SedfFamily:
    return BUILDERS[cid.name](*cid.parameters)


@dataclass
class Coverage:
    cid: ConstructionId
    notes: dict[str, Any] = field(default_factory=dict)


def _elementary_abelian(G: GroupSpec, p: int) -> bool:
    return all(f == p for f in G.factors)


def covering_construction(n: int, m: int, k: int, lam: int, group: GroupSpec | None = None) -> ConstructionId | None:
    """A registered construction producing an (n, m, k, lambda)-SEDF over ``group`` (if given).

    Named constructions are preferred over the generic lambda = 1 recipe;
    ``cyclotomic_e`` is only consulted for q up to 10^4 since it needs the table.
    """
    if k == 1 and m == n and lam == 1 and n >= 2:
        if group is None or group.is_cyclic():
            return ConstructionId("singletons", (n,))
    if m != 2:
        return None
    pp = prime_power(n)
    field_ok = pp is not None and (group is None or _elementary_abelian(group, pp[0]))
    if field_ok and n % 4 == 1:
        if 2 * k == n - 1 and 4 * lam == n - 1:
            return ConstructionId("paley_type", (n,))
        if 4 * k == n - 1 and 16 * lam == n - 1 and (n - 1) % 16 == 0:
            t2 = (n - 1) // 16
            t = round(t2 ** 0.5)
            if t * t == t2:
                return ConstructionId("theorem_4_3", (t,))
        if 6 * k == n - 1 and 36 * lam == n - 1 and (n - 1) % 108 == 0 and is_prime(n):
            t2 = (n - 1) // 108
            t = round(t2 ** 0.5)
            if t * t == t2:
                return ConstructionId("theorem_4_6", (t,))
        if (n - 1) % k == 0:
            e = (n - 1) // k
            if e % 2 == 0 and e * e * lam == n - 1 and n <= 10 ** 4:
                try:
                    cyclotomic_sedf(n, e)
                    return ConstructionId("cyclotomic_e", (n, e))
                except ConstructionRejected:
                    pass
    if lam == 1 and n == k * k + 1 and (group is None or group.is_cyclic()):
        return ConstructionId("lambda1_two_set", (k,))
    return None
