"""Exhaustive backtracking search for SEDFs in small abelian groups.

Symmetries used to cut the space:

* ``trans``: global translations.  The first set is restricted to one
  representative per translation orbit of k-subsets; set order is kept.
* ``sets``: additionally, sets 2..m are generated with increasing minima
  (set order is irrelevant to the SEDF condition).
* ``auto``: the first set ranges over orbits of the affine group
  (translations composed with automorphisms).  Falls back to ``sets`` when
  the automorphism group is larger than ``AUTO_LIMIT``.

Pruning is the per-target difference count: for each set j and each
difference d, the number of pairs (x in A_l, y in A_j, l != j) with
x - y = d may never exceed lambda.  Since the pair total per target is
(m-1)k^2 = lambda(n-1), a completed assignment within the cap is an SEDF.
Every emitted family is re-verified with the group-ring verifier.
"""

from __future__ import annotations

import itertools
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Sequence

from .errors import InvalidParams
from .group import GroupSpec, automorphisms
from .groupring import SedfFamily, verify_sedf
from .params import SedfParams

log = logging.getLogger(__name__)

LEVELS = ("trans", "sets", "auto")
AUTO_LIMIT = 2000
AUTO_MAX_ORDER = 64


@dataclass(frozen=True)
class SearchTask:
    group: GroupSpec
    m: int
    k: int
    lam: int | None = None
    symmetry: str = "sets"
    max_results: int | None = None
    max_nodes: int | None = None

    def __post_init__(self) -> None:
        n = self.group.order
        if self.symmetry not in LEVELS:
            raise ValueError(f"symmetry must be one of {LEVELS}")
        if self.m < 2 or self.k < 1 or self.m * self.k > n:
            raise InvalidParams(f"need m >= 2, k >= 1 and mk <= n (m={self.m}, k={self.k}, n={n})")
        num = (self.m - 1) * self.k ** 2
        if self.lam is None:
            if num % (n - 1):
                raise InvalidParams(f"(m-1)k^2 = {num} is not a multiple of n-1 = {n - 1}")
            object.__setattr__(self, "lam", num // (n - 1))
        elif self.lam * (n - 1) != num:
            raise InvalidParams(f"lambda={self.lam} violates (m-1)k^2 = lambda(n-1)")

    @property
    def params(self) -> SedfParams:
        return SedfParams(self.group.order, self.m, self.k, self.lam)


@dataclass
class SearchResult:
    task: SearchTask
    families: list[SedfFamily]
    exhausted: bool
    nodes_visited: int
    symmetry_used: str
    capped: str | None = None
    first_set_orbits: int = 0
    notes: list[str] = field(default_factory=list)


# ---------------------------------------------------------------------------
# symmetry helpers


def _translation_maps(G: GroupSpec) -> list[tuple[int, ...]]:
    n = G.order
    return [tuple(G.add_ranks(x, t) for x in range(n)) for t in range(n)]


def symmetry_maps(G: GroupSpec, level: str) -> tuple[list[tuple[int, ...]], str]:
    """Rank permutations generating the symmetry group at ``level``, and the level actually used."""
    trans = _translation_maps(G)
    if level != "auto":
        return trans, level
    auts = automorphisms(G, limit=AUTO_LIMIT) if G.order <= AUTO_MAX_ORDER else None
    if auts is None:
        return trans, "sets"
    maps = {tuple(t[a[x]] for x in range(G.order)) for a in auts for t in trans}
    return sorted(maps), "auto"


def _canonical_sets(sets: Sequence[Sequence[int]], maps: Sequence[Sequence[int]], keep_order: bool) -> tuple[tuple[int, ...], ...]:
    best = None
    for mp in maps:
        img = [tuple(sorted(mp[x] for x in s)) for s in sets]
        cand = tuple(img) if keep_order else tuple(sorted(img))
        if best is None or cand < best:
            best = cand
    assert best is not None
    return best


def canonicalize(family: SedfFamily, level: str = "sets") -> SedfFamily:
    """Deterministic representative of the family's orbit under the symmetries of ``level``.

    The lexicographic minimum over all translations (and automorphisms at
    ``auto``) of the sorted-sets form; it always contains the identity in its
    first set.  ``trans`` keeps the set order, the other levels sort sets.
    """
    if level not in LEVELS:
        raise ValueError(f"level must be one of {LEVELS}")
    maps, _ = symmetry_maps(family.group, level)
    canon = _canonical_sets(family.sets, maps, keep_order=(level == "trans"))
    return SedfFamily(family.group, canon, family.params)


def first_set_representatives(G: GroupSpec, k: int, maps: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    """One k-subset containing 0 per orbit of ``maps`` (lexicographically first)."""
    n = G.order
    seen: set[int] = set()
    reps = []
    for rest in itertools.combinations(range(1, n), k - 1):
        s = (0,) + rest
        mask = 0
        for x in s:
            mask |= 1 << x
        if mask in seen:
            continue
        reps.append(s)
        for mp in maps:
            img = 0
            for x in s:
                img |= 1 << mp[x]
            if img & 1:
                seen.add(img)
    return reps


# ---------------------------------------------------------------------------
# the backtracking kernel


@dataclass(frozen=True)
class _Kernel:
    n: int
    m: int
    k: int
    lam: int
    ordered_mins: bool
    sub: tuple[tuple[int, ...], ...]

    def run(self, first: tuple[int, ...], max_results: int | None, max_nodes: int | None) -> tuple[list[tuple[tuple[int, ...], ...]], int, bool]:
        """All completions with the given first set; returns (solutions, nodes, complete)."""
        n, m, k, lam = self.n, self.m, self.k, self.lam
        sub = self.sub
        ordered = self.ordered_mins
        sets: list[list[int]] = [list(first)] + [[] for _ in range(m - 1)]
        used = bytearray(n)
        for x in first:
            used[x] = 1
        cnt = [[0] * n for _ in range(m)]
        found: list[tuple[tuple[int, ...], ...]] = []
        nodes = 0
        stop = False

        def place(i: int, x: int) -> bool:
            ci = cnt[i]
            sx = sub[x]
            for l in range(m):
                if l == i:
                    continue
                cl = cnt[l]
                for y in sets[l]:
                    if ci[sub[y][x]] >= lam or cl[sx[y]] >= lam:
                        return False
            for l in range(m):
                if l == i:
                    continue
                cl = cnt[l]
                for y in sets[l]:
                    ci[sub[y][x]] += 1
                    cl[sx[y]] += 1
            sets[i].append(x)
            used[x] = 1
            return True

        def unplace(i: int) -> None:
            x = sets[i].pop()
            used[x] = 0
            ci = cnt[i]
            sx = sub[x]
            for l in range(m):
                if l == i:
                    continue
                cl = cnt[l]
                for y in sets[l]:
                    ci[sub[y][x]] -= 1
                    cl[sx[y]] -= 1

        def rec(i: int, start: int) -> None:
            nonlocal nodes, stop
            nodes += 1
            if max_nodes is not None and nodes > max_nodes:
                stop = True
            if stop:
                return
            cur = sets[i]
            if len(cur) == k:
                if i == m - 1:
                    found.append(tuple(tuple(s) for s in sets))
                    if max_results is not None and len(found) >= max_results:
                        stop = True
                    return
                j = i + 1
                lo = sets[i][0] + 1 if (ordered and i >= 1) else 0
                # with ordered minima, sets j..m-1 all live in the free ranks >= x
                free = n - lo - sum(used[lo:])
                need_free = (m - j) * k if ordered else k
                for x in range(lo, n - k + 1):
                    if free < need_free:
                        break
                    if used[x]:
                        continue
                    free -= 1
                    if not place(j, x):
                        continue
                    rec(j, x + 1)
                    unplace(j)
                    if stop:
                        return
                return
            need = k - len(cur)
            for x in range(start, n - need + 1):
                if used[x] or not place(i, x):
                    continue
                rec(i, x + 1)
                unplace(i)
                if stop:
                    return

        if m == 1:
            return [tuple(first)], 1, True
        rec(0, n)  # the first set is complete; rec moves straight on to set 2
        return found, nodes, not stop


def _make_kernel(task: SearchTask) -> _Kernel:
    G = task.group
    n = G.order
    sub = tuple(tuple(G.sub_ranks(a, b) for b in range(n)) for a in range(n))
    return _Kernel(n, task.m, task.k, task.lam, task.symmetry != "trans", sub)


def _run_chunk(kernel: _Kernel, firsts: list[tuple[int, ...]], max_results: int | None, max_nodes: int | None):
    sols: list[tuple[tuple[int, ...], ...]] = []
    nodes = 0
    complete = True
    for f in firsts:
        budget = None if max_nodes is None else max(max_nodes - nodes, 0)
        s, nd, ok = kernel.run(f, None if max_results is None else max_results - len(sols), budget)
        sols.extend(s)
        nodes += nd
        if not ok:
            complete = False
            break
    return sols, nodes, complete


def _threads() -> int:
    try:
        return max(0, int(os.environ.get("SEDF_THREADS", "0")))
    except ValueError:
        return 0


def exhaustive_search(task: SearchTask, threads: int | None = None) -> SearchResult:
    """Every SEDF with the task's parameters up to the chosen symmetry.

    ``threads`` defaults to the SEDF_THREADS environment variable; 0 runs
    sequentially.  Output (families, node count) does not depend on it,
    except when a result or node cap cuts the run short.
    """
    G = task.group
    threads = _threads() if threads is None else threads
    maps, used_level = symmetry_maps(G, task.symmetry)
    notes = []
    if used_level != task.symmetry:
        notes.append(f"automorphism group too large or |G| > {AUTO_MAX_ORDER}; used '{used_level}'")
    firsts = first_set_representatives(G, task.k, maps)
    kernel = _make_kernel(task)

    if threads and len(firsts) > 1:
        chunks = [firsts[i::threads] for i in range(threads)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            outs = list(pool.map(_run_chunk, [kernel] * len(chunks), chunks, [task.max_results] * len(chunks), [task.max_nodes] * len(chunks)))
        raw = [s for o in outs for s in o[0]]
        nodes = sum(o[1] for o in outs)
        complete = all(o[2] for o in outs)
    else:
        raw, nodes, complete = _run_chunk(kernel, firsts, task.max_results, task.max_nodes)

    canon_level = "trans" if task.symmetry == "trans" else used_level
    canon_maps = maps if canon_level == used_level else symmetry_maps(G, canon_level)[0]
    seen: dict[tuple[tuple[int, ...], ...], None] = {}
    for sol in raw:
        seen.setdefault(_canonical_sets(sol, canon_maps, keep_order=(canon_level == "trans")), None)
    keys = sorted(seen)
    capped = None
    if task.max_results is not None and len(keys) >= task.max_results and not complete:
        capped = "results"
    elif not complete:
        capped = "nodes"
    if task.max_results is not None and len(keys) > task.max_results:
        keys = keys[: task.max_results]
        complete = False
        capped = "results"

    families = []
    for key in keys:
        fam = SedfFamily(G, key, task.params)
        report = verify_sedf(fam)
        if not report.ok:
            raise AssertionError(f"search emitted a non-SEDF: {key}")
        families.append(fam)
    log.debug("search %s over %s: %d families, %d nodes", task.params, G, len(families), nodes)
    return SearchResult(task, families, complete, nodes, used_level, capped, len(firsts), notes)
