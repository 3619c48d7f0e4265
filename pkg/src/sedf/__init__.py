"""Construct, verify, analyze and search for strong external difference families over finite abelian groups."""

from __future__ import annotations

from .constructions import ConstructionId, build, covering_construction, paley_type
from .feasibility import GroupContext, Verdict, check_all, check_rule
from .group import GroupElement, GroupSpec, abelian_groups, make_group, parse_group
from .groupring import GroupRingElement, SedfFamily, verify_edf, verify_sedf
from .params import SedfParams
from .search import SearchTask, canonicalize, exhaustive_search

__all__ = [
    "ConstructionId",
    "GroupContext",
    "GroupElement",
    "GroupRingElement",
    "GroupSpec",
    "SearchTask",
    "SedfFamily",
    "SedfParams",
    "Verdict",
    "abelian_groups",
    "build",
    "canonicalize",
    "check_all",
    "check_rule",
    "covering_construction",
    "exhaustive_search",
    "make_group",
    "paley_type",
    "parse_group",
    "verify_edf",
    "verify_sedf",
]
