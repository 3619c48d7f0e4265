"""Rule engine: necessary conditions and nonexistence results for (n, m, k, lambda)-SEDFs.

Each rule returns PASS, FAIL (the rule certifies nonexistence) or
NOT_APPLICABLE (its hypotheses are not met, including missing group
structure).  Rules are evaluated in a fixed order with exact integer
arithmetic; the first FAIL decides the verdict, but every rule is traced.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Iterator

from .constructions import ConstructionId, covering_construction
from .errors import UnknownRule
from .group import GroupSpec
from .ntheory import factorize, is_prime, is_squarefree
from .params import SedfParams

__all__ = [
    "SedfParams",
    "GroupContext",
    "RuleResult",
    "Verdict",
    "RULES",
    "check_rule",
    "check_all",
    "scan",
    "scan_tuples",
]


class RuleResult(enum.Enum):
    PASS = "pass"
    FAIL = "fail"
    NOT_APPLICABLE = "not_applicable"


@dataclass(frozen=True)
class GroupContext:
    """What is known about the group: nothing, cyclic, or an explicit GroupSpec."""

    structure: str = "unknown"
    group: GroupSpec | None = None

    def __post_init__(self) -> None:
        if self.structure not in ("unknown", "cyclic", "explicit"):
            raise ValueError(f"bad structure {self.structure!r}")
        if (self.structure == "explicit") != (self.group is not None):
            raise ValueError("explicit context needs a group, and only then")

    @classmethod
    def unknown(cls) -> GroupContext:
        return cls()

    @classmethod
    def cyclic(cls) -> GroupContext:
        return cls("cyclic")

    @classmethod
    def explicit(cls, group: GroupSpec) -> GroupContext:
        return cls("explicit", group)

    def is_cyclic(self, n: int) -> bool | None:
        """True/False when the structure is determined, else None."""
        if self.structure == "cyclic":
            return True
        if self.group is not None:
            return self.group.is_cyclic()
        if n == 1 or is_squarefree(n):
            return True
        return None

    def factorization(self, n: int) -> dict[int, int]:
        return factorize(n)

    def to_dict(self) -> dict[str, object]:
        return {"structure": self.structure, "group": self.group.literal() if self.group else None}


@dataclass(frozen=True)
class Rule:
    id: str
    citation: str
    statement: str
    fn: Callable[[SedfParams, GroupContext], RuleResult]


P, F, NA = RuleResult.PASS, RuleResult.FAIL, RuleResult.NOT_APPLICABLE


def _ok(cond: bool) -> RuleResult:
    return P if cond else F


def _r1(s: SedfParams, ctx: GroupContext) -> RuleResult:
    return _ok(s.lam * (s.n - 1) == (s.m - 1) * s.k ** 2)


def _r2(s: SedfParams, ctx: GroupContext) -> RuleResult:
    return _ok(s.m > 1 and s.m * s.k <= s.n)


def _r3(s: SedfParams, ctx: GroupContext) -> RuleResult:
    return _ok((s.k == 1 and s.lam == 1) or (s.k > 1 and s.lam < s.k))


def _r4(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if s.lam != 1:
        return NA
    return _ok((s.m == 2 and s.n == s.k ** 2 + 1) or (s.k == 1 and s.m == s.n))


def _r5(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if s.k <= 1:
        return NA
    return _ok(s.m not in (3, 4))


def _r6(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if not (is_prime(s.n) and s.k > 1 and s.m > 2):
        return NA
    return F


def _r7(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if not (s.m >= 3 and s.k > s.lam >= 2):
        return NA
    return _ok(s.lam * (s.k - 1) * (s.m - 2) <= (s.lam - 1) * s.k * (s.m - 1))


def _r8(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if s.lam != 2:
        return NA
    return _ok(s.m == 2)


def _r9(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if s.k <= 1:
        return NA
    return _ok(s.n % s.k != 0)


def _r10(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if not (s.k > 1 and s.m > 4):
        return NA
    for p in factorize(s.n) if s.n > 1 else ():
        if gcd(s.m * s.k, p) == 1 and (s.m - 2) % p:
            return F
    return P


def _r11(s: SedfParams, ctx: GroupContext) -> RuleResult:
    if not (s.k > 1 and s.m > 4 and s.n > 1 and is_squarefree(s.n) and gcd(s.m * s.k, s.n) == 1):
        return NA
    return F


def _r12(s: SedfParams, ctx: GroupContext) -> RuleResult:
    f = factorize(s.n) if s.n > 1 else {}
    if not (len(f) == 1 and list(f.values()) == [2] and s.m > 2 and s.k > 1):
        return NA
    if ctx.is_cyclic(s.n) is not True:
        return NA
    return F


def _r13(s: SedfParams, ctx: GroupContext) -> RuleResult:
    f = factorize(s.n) if s.n > 1 else {}
    if not (len(f) == 2 and all(e == 1 for e in f.values()) and s.m > 2 and s.k > 1):
        return NA
    return F


RULES: dict[str, Rule] = {
    r.id: r
    for r in [
        Rule("R1", "counting identity", "(m-1)k^2 = lambda(n-1)", _r1),
        Rule("R2", "disjointness bound", "m > 1 and mk <= n", _r2),
        Rule("R3", "lambda below k", "k = 1 and lambda = 1, or k > 1 and lambda < k", _r3),
        Rule("R4", "lambda = 1 classification", "lambda = 1 only for m = 2, n = k^2+1 or k = 1, m = n", _r4),
        Rule("R5", "no three or four sets", "k > 1 forces m != 3, 4", _r5),
        Rule("R6", "prime order groups", "none over a group of prime order with k > 1, m > 2", _r6),
        Rule("R7", "lambda >= 2 inequality", "lambda(k-1)(m-2) <= (lambda-1)k(m-1) when m >= 3, k > lambda >= 2", _r7),
        Rule("R8", "lambda = 2 needs two sets", "lambda = 2 forces m = 2", _r8),
        Rule("R9", "k divides n", "k > 1 forces k not dividing n", _r9),
        Rule("R10", "prime quotient congruence", "k > 1, m > 4: m = 2 mod p for each prime p | n with gcd(mk, p) = 1", _r10),
        Rule("R11", "squarefree order coprime to mk", "none for squarefree n, m > 4, k > 1, gcd(mk, n) = 1", _r11),
        Rule("R12", "cyclic groups of order p^2", "none over a cyclic group of order p^2 with m > 2, k > 1", _r12),
        Rule("R13", "groups of order pq", "none of order pq (p != q primes) with m > 2, k > 1", _r13),
    ]
}


def check_rule(rule_id: str, params: SedfParams, ctx: GroupContext | None = None) -> RuleResult:
    try:
        rule = RULES[rule_id]
    except KeyError:
        raise UnknownRule(rule_id) from None
    return rule.fn(params, ctx or GroupContext())


class Outcome(enum.Enum):
    INFEASIBLE = "infeasible"
    UNDECIDED = "undecided"
    KNOWN_EXISTS = "known_exists"


@dataclass
class Verdict:
    outcome: Outcome
    params: SedfParams
    context: GroupContext
    rule: str | None = None
    citation: str | None = None
    construction: ConstructionId | None = None
    trace: list[tuple[str, RuleResult]] = field(default_factory=list)

    def __str__(self) -> str:
        if self.outcome is Outcome.INFEASIBLE:
            return f"Infeasible({self.rule}: {self.citation})"
        if self.outcome is Outcome.KNOWN_EXISTS:
            return f"KnownExists({self.construction})"
        return "Undecided"

    def to_dict(self) -> dict[str, object]:
        return {
            "params": dict(zip(("n", "m", "k", "lambda"), self.params.as_tuple())),
            "context": self.context.to_dict(),
            "outcome": self.outcome.value,
            "rule": self.rule,
            "citation": self.citation,
            "construction": None
            if self.construction is None
            else {"name": self.construction.name, "parameters": list(self.construction.parameters)},
            "trace": [[rid, res.value] for rid, res in self.trace],
        }


def check_all(params: SedfParams, ctx: GroupContext | None = None) -> Verdict:
    ctx = ctx or GroupContext()
    if ctx.group is not None and ctx.group.order != params.n:
        raise ValueError(f"group {ctx.group} has order {ctx.group.order}, not n={params.n}")
    trace = [(rid, rule.fn(params, ctx)) for rid, rule in RULES.items()]
    first = next((rid for rid, res in trace if res is F), None)
    if first is not None:
        return Verdict(Outcome.INFEASIBLE, params, ctx, first, RULES[first].citation, None, trace)
    cid = covering_construction(params.n, params.m, params.k, params.lam, ctx.group)
    if cid is not None:
        return Verdict(Outcome.KNOWN_EXISTS, params, ctx, None, None, cid, trace)
    return Verdict(Outcome.UNDECIDED, params, ctx, None, None, None, trace)


def scan_tuples(max_n: int) -> Iterator[SedfParams]:
    """All (n, m, k, lambda) with m >= 2, k >= 1, mk <= n <= max_n and integral lambda."""
    for n in range(2, max_n + 1):
        for m in range(2, n + 1):
            for k in range(1, n // m + 1):
                s = SedfParams.with_derived_lambda(n, m, k)
                if s is not None:
                    yield s


def scan(max_n: int, ctx_for: Callable[[int], GroupContext] | None = None) -> list[Verdict]:
    return [check_all(s, ctx_for(s.n) if ctx_for else GroupContext()) for s in scan_tuples(max_n)]
