"""Integer group ring Z[G] with dense coefficient vectors, plus SEDF/EDF verification.

A multiset over G is identified with ``sum a_g g``; products are convolutions,
``S^{-1}`` reflects the support through ``g -> -g``.  Coefficient vectors are
indexed by element rank (see :mod:`sedf.group`).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import DuplicateElement, MismatchedGroup, NonBinaryCoefficients, ParseError
from .group import GroupElement, GroupSpec, QuotientMap, parse_presentation, subgroup_closure
from .params import SedfParams


@lru_cache(maxsize=256)
def _neg_index(G: GroupSpec) -> np.ndarray:
    idx = np.arange(G.order).reshape(G.factors or ())
    for axis in range(G.rank_count):
        idx = np.roll(np.flip(idx, axis), 1, axis)
    out = idx.reshape(-1)
    out.flags.writeable = False
    return out


def _as_rank(G: GroupSpec, x: GroupElement | int | Sequence[int]) -> int:
    if isinstance(x, GroupElement):
        if x.group != G:
            raise MismatchedGroup(f"{x} is not in {G}")
        return x.rank
    if isinstance(x, (int, np.integer)):
        if G.rank_count == 1:
            return int(x) % G.order
        if not 0 <= x < G.order:
            raise MismatchedGroup(f"rank {x} out of range for {G}")
        return int(x)
    return G.rank(list(x))


class GroupRingElement:
    """An element of Z[G]; immutable."""

    __slots__ = ("group", "coeffs")

    def __init__(self, group: GroupSpec, coeffs: Iterable[int] | np.ndarray):
        arr = np.array(coeffs, dtype=np.int64).reshape(-1)
        if arr.shape[0] != group.order:
            raise MismatchedGroup(f"need {group.order} coefficients for {group}, got {arr.shape[0]}")
        arr.flags.writeable = False
        self.group = group
        self.coeffs = arr

    # constructors
    @classmethod
    def zero(cls, G: GroupSpec) -> GroupRingElement:
        return cls(G, np.zeros(G.order, dtype=np.int64))

    @classmethod
    def unit(cls, G: GroupSpec) -> GroupRingElement:
        c = np.zeros(G.order, dtype=np.int64)
        c[0] = 1
        return cls(G, c)

    @classmethod
    def full(cls, G: GroupSpec, t: int = 1) -> GroupRingElement:
        return cls(G, np.full(G.order, t, dtype=np.int64))

    @classmethod
    def from_ranks(cls, G: GroupSpec, ranks: Iterable[int]) -> GroupRingElement:
        c = np.zeros(G.order, dtype=np.int64)
        np.add.at(c, np.fromiter(ranks, dtype=np.int64), 1)
        return cls(G, c)

    # views
    def __getitem__(self, x: GroupElement | int) -> int:
        return int(self.coeffs[_as_rank(self.group, x)])

    def weight(self) -> int:
        return int(self.coeffs.sum())

    def support(self) -> list[int]:
        return [int(r) for r in np.flatnonzero(self.coeffs)]

    def is_binary(self) -> bool:
        return bool(np.all((self.coeffs == 0) | (self.coeffs == 1)))

    def is_constant(self) -> bool:
        return bool(np.all(self.coeffs == self.coeffs[0]))

    def as_dict(self) -> dict[int, int]:
        return {r: int(self.coeffs[r]) for r in self.support()}

    def _check(self, other: GroupRingElement) -> None:
        if other.group != self.group:
            raise MismatchedGroup(f"{other.group} vs {self.group}")

    # ring operations
    def __add__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        return GroupRingElement(self.group, self.coeffs + other.coeffs)

    def __sub__(self, other: GroupRingElement) -> GroupRingElement:
        self._check(other)
        return GroupRingElement(self.group, self.coeffs - other.coeffs)

    def __neg__(self) -> GroupRingElement:
        return GroupRingElement(self.group, -self.coeffs)

    def __mul__(self, other: GroupRingElement | int) -> GroupRingElement:
        if isinstance(other, (int, np.integer)):
            return scale(int(other), self)
        return convolve(self, other)

    def __rmul__(self, c: int) -> GroupRingElement:
        return scale(int(c), self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.group == other.group and bool(np.array_equal(self.coeffs, other.coeffs))

    def __hash__(self) -> int:
        return hash((self.group, self.coeffs.tobytes()))

    def __repr__(self) -> str:
        return f"GroupRingElement({self.group}, {self.as_dict()})"


def from_set(G: GroupSpec, elements: Iterable[GroupElement | int | Sequence[int]], strict: bool = True) -> GroupRingElement:
    """0/1 element for a set; with ``strict=False`` repeated elements accumulate."""
    ranks = [_as_rank(G, x) for x in elements]
    if strict and len(set(ranks)) != len(ranks):
        raise DuplicateElement(f"repeated element in {ranks}")
    return GroupRingElement.from_ranks(G, ranks)


def add(R: GroupRingElement, S: GroupRingElement) -> GroupRingElement:
    return R + S


def scale(c: int, R: GroupRingElement) -> GroupRingElement:
    return GroupRingElement(R.group, c * R.coeffs)


def weight(R: GroupRingElement) -> int:
    return R.weight()


def invert_support(S: GroupRingElement) -> GroupRingElement:
    """``S^{-1}``: coefficient of g is the input coefficient of -g."""
    return GroupRingElement(S.group, S.coeffs[_neg_index(S.group)])


def convolve(R: GroupRingElement, S: GroupRingElement) -> GroupRingElement:
    """Group-ring product: coefficient of h is ``sum_g a_g b_{h-g}``."""
    R._check(S)
    G = R.group
    if G.rank_count == 0:
        return GroupRingElement(G, R.coeffs * S.coeffs)
    shape = G.factors
    axes = tuple(range(G.rank_count))
    # iterate over the sparser operand
    if np.count_nonzero(R.coeffs) > np.count_nonzero(S.coeffs):
        R, S = S, R
    s_nd = S.coeffs.reshape(shape)
    out = np.zeros(shape, dtype=np.int64)
    for r in np.flatnonzero(R.coeffs):
        out += R.coeffs[r] * np.roll(s_nd, G.coords(int(r)), axis=axes)
    return GroupRingElement(G, out.reshape(-1))


def external_difference(A: GroupRingElement, B: GroupRingElement) -> GroupRingElement:
    """Multiset ``{x - y : x in A, y in B}``."""
    return convolve(A, invert_support(B))


def push_forward(sigma: QuotientMap, D: GroupRingElement) -> GroupRingElement:
    if D.group != sigma.source:
        raise MismatchedGroup(f"{D.group} is not the source {sigma.source}")
    out = np.zeros(sigma.target.order, dtype=np.int64)
    np.add.at(out, np.asarray(sigma.rank_map(), dtype=np.int64), D.coeffs)
    return GroupRingElement(sigma.target, out)


def is_union_of_cosets(D: GroupRingElement, H_generators: Iterable[GroupElement | int]) -> bool:
    if not D.is_binary():
        raise NonBinaryCoefficients("coset test needs a 0/1 element")
    G = D.group
    H = [h for h in subgroup_closure(G, [_as_rank(G, h) for h in H_generators]) if h]
    supp = set(D.support())
    return all(G.add_ranks(x, h) in supp for x in supp for h in H)


# ---------------------------------------------------------------------------
# families


@dataclass(frozen=True)
class SedfFamily:
    """m element sets over a group, stored as sorted rank tuples, with claimed parameters."""

    group: GroupSpec
    sets: tuple[tuple[int, ...], ...]
    params: SedfParams

    @classmethod
    def from_sets(
        cls,
        G: GroupSpec,
        sets: Sequence[Iterable[GroupElement | int | Sequence[int]]],
        lam: int,
        k: int | None = None,
    ) -> SedfFamily:
        rank_sets = tuple(tuple(sorted(_as_rank(G, x) for x in s)) for s in sets)
        if k is None:
            k = len(rank_sets[0]) if rank_sets else 1
        return cls(G, rank_sets, SedfParams(G.order, max(len(rank_sets), 1), max(k, 1), lam))

    @property
    def m(self) -> int:
        return len(self.sets)

    def elements(self) -> list[list[GroupElement]]:
        return [[self.group.from_rank(r) for r in s] for s in self.sets]

    def ring_elements(self) -> list[GroupRingElement]:
        return [GroupRingElement.from_ranks(self.group, s) for s in self.sets]


@dataclass
class VerificationReport:
    kind: str
    ok: bool
    params: SedfParams
    problems: list[str] = field(default_factory=list)
    defects: list[dict[int, int]] = field(default_factory=list)
    matched_lambda: int | None = None

    def to_dict(self, G: GroupSpec | None = None) -> dict[str, Any]:
        def key(r: int) -> Any:
            return r if G is None else encode_element(G, r)

        return {
            "kind": self.kind,
            "ok": self.ok,
            "params": dict(zip(("n", "m", "k", "lambda"), self.params.as_tuple())),
            "problems": self.problems,
            "defects": [[[key(r), c] for r, c in d.items()] for d in self.defects],
            "matched_lambda": self.matched_lambda,
        }


def _structural_problems(family: SedfFamily) -> list[str]:
    G = family.group
    problems = []
    if family.m < 2:
        problems.append(f"need at least 2 sets, got {family.m}")
    if family.params.n != G.order:
        problems.append(f"n={family.params.n} but |G|={G.order}")
    if family.params.m != family.m:
        problems.append(f"m={family.params.m} but {family.m} sets given")
    for j, s in enumerate(family.sets):
        if len(s) != family.params.k:
            problems.append(f"set {j} has size {len(s)}, expected k={family.params.k}")
        if len(set(s)) != len(s):
            problems.append(f"set {j} repeats an element")
    seen: dict[int, int] = {}
    for j, s in enumerate(family.sets):
        for r in s:
            if r in seen and seen[r] != j:
                problems.append(f"sets {seen[r]} and {j} share element {encode_element(G, r)}")
            seen.setdefault(r, j)
    return problems


def verify_sedf(family: SedfFamily) -> VerificationReport:
    """Per-set defect ``sum_{l != j} Delta_E(A_l, A_j) - lambda (G - e)``; ok iff all vanish."""
    G = family.group
    problems = _structural_problems(family)
    lam = family.params.lam
    target = GroupRingElement.full(G, lam) - scale(lam, GroupRingElement.unit(G))
    parts = family.ring_elements()
    total = GroupRingElement.zero(G)
    for A in parts:
        total = total + A
    defects = []
    for A in parts:
        diff = external_difference(total - A, A) - target
        defects.append(diff.as_dict())
    ok = not problems and all(not d for d in defects)
    return VerificationReport("SEDF", ok, family.params, problems, defects, lam if ok else None)


def verify_edf(family: SedfFamily, lam: int | None = None) -> VerificationReport:
    """Pool all ordered pairs; infer the lambda the pooled multiset matches, if any.

    When ``lam`` is given the inferred value must also equal it.
    """
    G = family.group
    problems = _structural_problems(family)
    parts = family.ring_elements()
    total = GroupRingElement.zero(G)
    for A in parts:
        total = total + A
    pooled = external_difference(total, total)
    for A in parts:
        pooled = pooled - external_difference(A, A)
    c = pooled.coeffs
    matched = None
    if G.order > 1 and c[0] == 0 and np.all(c[1:] == c[1]) and c[1] > 0:
        matched = int(c[1])
    else:
        problems.append("pooled external differences are not uniform on G - e")
    if lam is not None and matched is not None and matched != lam:
        problems.append(f"pooled multiset matches lambda={matched}, not {lam}")
    expected = lam if lam is not None else (matched or 0)
    defect = pooled - (GroupRingElement.full(G, expected) - scale(expected, GroupRingElement.unit(G)))
    params = SedfParams(family.params.n, family.params.m, family.params.k, max(expected, 1))
    return VerificationReport("EDF", not problems, params, problems, [defect.as_dict()], matched)


def quotient_images(family: SedfFamily, sigma: QuotientMap) -> list[GroupRingElement]:
    return [push_forward(sigma, A) for A in family.ring_elements()]


def quotient_identity_defects(family: SedfFamily, sigma: QuotientMap) -> list[dict[int, int]]:
    """``sum_{l != j} D_j D_l^{-1} - (lambda |H| (G/H) - lambda e)`` for each j."""
    D = quotient_images(family, sigma)
    Q = sigma.target
    h = sigma.source.order // Q.order
    lam = family.params.lam
    rhs = GroupRingElement.full(Q, lam * h) - scale(lam, GroupRingElement.unit(Q))
    out = []
    for j, Dj in enumerate(D):
        acc = GroupRingElement.zero(Q)
        for l, Dl in enumerate(D):
            if l != j:
                acc = acc + convolve(Dj, invert_support(Dl))
        out.append((acc - rhs).as_dict())
    return out


# ---------------------------------------------------------------------------
# JSON


def encode_element(G: GroupSpec, rank: int) -> int | list[int]:
    c = G.coords(rank)
    return c[0] if len(c) == 1 else list(c)


def family_to_dict(family: SedfFamily) -> dict[str, Any]:
    G = family.group
    return {
        "group": G.literal(),
        "n": G.order,
        "m": family.params.m,
        "k": family.params.k,
        "lambda": family.params.lam,
        "sets": [[encode_element(G, r) for r in s] for s in family.sets],
    }


def family_from_dict(data: Mapping[str, Any]) -> SedfFamily:
    """Parse family JSON; coordinates are read against the literal's factor order."""
    try:
        pres = parse_presentation(str(data["group"]))
        sets_raw = data["sets"]
        lam = int(data["lambda"])
    except KeyError as exc:
        raise ParseError(f"family JSON missing key {exc}") from None
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad family JSON: {exc}") from None
    G = pres.group
    try:
        sets = [[pres.to_canonical(x).rank for x in s] for s in sets_raw]
    except (TypeError, MismatchedGroup) as exc:
        raise ParseError(f"bad element in family JSON: {exc}") from None
    k = int(data.get("k", len(sets[0]) if sets else 1))
    fam = SedfFamily.from_sets(G, sets, lam, k=k)
    m = int(data.get("m", fam.m))
    if m != fam.m:
        fam = SedfFamily(G, fam.sets, SedfParams(G.order, m, k, lam))
    return fam
