from __future__ import annotations

import pytest

from sedf.errors import UnknownRule
from sedf.feasibility import RULES, GroupContext, Outcome, RuleResult, check_all, check_rule, scan, scan_tuples
from sedf.group import GroupSpec, abelian_groups
from sedf.params import SedfParams

P, F, NA = RuleResult.PASS, RuleResult.FAIL, RuleResult.NOT_APPLICABLE


def test_r1_counting_identity():
    for lam in range(1, 12):
        assert check_rule("R1", SedfParams(12, 3, 2, lam)) is F
    for n in range(2, 30):
        for m in range(2, 6):
            for k in range(1, 5):
                for lam in range(1, 8):
                    s = SedfParams(n, m, k, lam)
                    assert (check_rule("R1", s) is P) == (lam * (n - 1) == (m - 1) * k * k)


def test_rule_examples():
    assert check_rule("R5", SedfParams(10, 3, 3, 2)) is F
    for lam in (1, 2, 3, 7):
        assert check_rule("R13", SedfParams(35, 5, 4, lam)) is F
    assert check_rule("R10", SedfParams(243, 11, 22, 20)) is P
    assert check_rule("R6", SedfParams(13, 3, 2, 1)) is F
    assert check_rule("R7", SedfParams(19, 3, 6, 4)) is P
    assert check_rule("R8", SedfParams(9, 2, 4, 2)) is P
    assert check_rule("R9", SedfParams(9, 3, 3, 2)) is F
    assert check_rule("R11", SedfParams(35, 6, 2, 1)) is F
    with pytest.raises(UnknownRule):
        check_rule("R99", SedfParams(5, 2, 2, 1))


def test_r12_needs_cyclic_context():
    s = SedfParams(49, 5, 8, 2)
    assert check_rule("R12", s, GroupContext.unknown()) is NA
    assert check_rule("R12", s, GroupContext.cyclic()) is F
    assert check_rule("R12", s, GroupContext.explicit(GroupSpec((49,)))) is F
    assert check_rule("R12", s, GroupContext.explicit(GroupSpec((7, 7)))) is NA
    v = check_all(s, GroupContext.cyclic())
    assert dict(v.trace)["R12"] is F


def test_check_all_examples():
    v = check_all(SedfParams(5, 2, 2, 1))
    assert v.outcome is Outcome.KNOWN_EXISTS and v.construction.name == "paley_type"
    v = check_all(SedfParams(243, 11, 22, 20))
    assert v.outcome is Outcome.UNDECIDED and str(v) == "Undecided"
    assert [rid for rid, _ in v.trace] == list(RULES)
    v = check_all(SedfParams(35, 5, 4, 2))
    assert v.outcome is Outcome.INFEASIBLE and v.rule == "R1"
    assert dict(v.trace)["R13"] is F


def test_infeasible_is_first_failure_and_cited():
    for v in scan(40):
        if v.outcome is Outcome.INFEASIBLE:
            first = next(rid for rid, res in v.trace if res is F)
            assert v.rule == first
            assert v.citation == RULES[v.rule].citation
        assert len(v.trace) == len(RULES)


def test_scan_10():
    verdicts = {v.params.as_tuple(): v for v in scan(10)}
    assert verdicts[(5, 2, 2, 1)].outcome is Outcome.KNOWN_EXISTS
    assert verdicts[(10, 2, 3, 1)].outcome is Outcome.KNOWN_EXISTS
    for t, v in verdicts.items():
        n, m, k, lam = t
        if m in (3, 4) and k > 1:
            # R5 always fails here; a lambda = 1 tuple such as (9,3,2,1) is caught earlier by R4
            assert v.outcome is Outcome.INFEASIBLE and dict(v.trace)["R5"] is F
            assert v.rule == ("R4" if lam == 1 else "R5")
        if m > 2 and k > 1 and lam > 1:
            assert v.outcome is not Outcome.UNDECIDED


def test_scan_tuples_are_integral():
    for s in scan_tuples(30):
        assert s.satisfies_count() and s.m * s.k <= s.n


def test_context_monotonicity():
    for s in scan_tuples(60):
        unknown = check_all(s, GroupContext.unknown())
        cyclic = check_all(s, GroupContext.cyclic())
        if unknown.outcome is Outcome.INFEASIBLE:
            assert cyclic.outcome is Outcome.INFEASIBLE


def test_explicit_group_order_checked():
    with pytest.raises(ValueError):
        check_all(SedfParams(9, 2, 4, 2), GroupContext.explicit(GroupSpec((8,))))


def test_prime_order_is_cyclic_automatically():
    ctx = GroupContext.unknown()
    assert ctx.is_cyclic(13) is True
    assert ctx.is_cyclic(9) is None
    assert all(GroupContext.explicit(G).is_cyclic(16) == G.is_cyclic() for G in abelian_groups(16))


def test_verdict_to_dict():
    import json

    d = check_all(SedfParams(17, 2, 4, 1)).to_dict()
    json.dumps(d)
    assert d["outcome"] == "known_exists"
    assert d["construction"] == {"name": "theorem_4_3", "parameters": [1]}
