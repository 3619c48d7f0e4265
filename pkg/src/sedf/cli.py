"""Command-line front end and JSON catalog persistence.

Exit codes: 0 success (verdict computed, family verified), 1 verification
failure or rejected construction, 2 usage error or malformed input.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Iterable, Sequence

from .charspec import spectrum
from .constructions import CONSTRUCTION_NAMES, ConstructionId, ConstructionRejected, build
from .errors import ConflictError, ParseError, SedfError
from .feasibility import GroupContext, check_all, scan
from .gfield import cyclotomic_classes, field_of_order
from .group import parse_group, parse_presentation
from .groupring import GroupRingElement, family_from_dict, family_to_dict, verify_edf, verify_sedf
from .params import SedfParams
from .search import SearchTask, canonicalize, exhaustive_search

log = logging.getLogger("sedf")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


# ---------------------------------------------------------------------------
# catalog


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _params_dict(p: SedfParams) -> dict[str, int]:
    return dict(zip(("n", "m", "k", "lambda"), p.as_tuple()))


def _entry_key(entry: dict[str, Any]) -> tuple:
    p = entry["params"]
    params = (p["n"], p["m"], p["k"], p["lambda"])
    fam = entry.get("family")
    sets = None if fam is None else json.dumps(fam["sets"])
    return params, entry.get("group"), sets


@dataclass
class Catalog:
    """Verdicts and families keyed by (params, group literal, canonical family)."""

    entries: list[dict[str, Any]] = field(default_factory=list)

    def __post_init__(self) -> None:
        entries, self.entries = self.entries, []
        self._index: dict[tuple, int] = {}
        for e in entries:
            self.add(e)

    def __len__(self) -> int:
        return len(self.entries)

    def add(self, entry: dict[str, Any]) -> bool:
        """Insert unless already present; raise ConflictError on a disagreeing verdict."""
        key = _entry_key(entry)
        if key in self._index:
            old = self.entries[self._index[key]]
            v_old, v_new = old.get("verdict"), entry.get("verdict")
            if v_old is not None and v_new is not None and v_old.get("outcome") != v_new.get("outcome"):
                raise ConflictError(f"conflicting verdicts for {key[0]} over {key[1]}: {v_old.get('outcome')} vs {v_new.get('outcome')}")
            return False
        self._index[key] = len(self.entries)
        self.entries.append(entry)
        return True

    def add_family(self, family, provenance: dict[str, Any]) -> bool:
        fam = canonicalize(family, "sets")
        return self.add(
            {
                "params": _params_dict(fam.params),
                "group": fam.group.literal(),
                "family": family_to_dict(fam),
                "provenance": provenance,
                "timestamp": _now(),
            }
        )

    def add_verdict(self, verdict) -> bool:
        d = verdict.to_dict()
        return self.add(
            {
                "params": d["params"],
                "group": verdict.context.group.literal() if verdict.context.group else None,
                "verdict": d,
                "provenance": {"type": "feasibility"},
                "timestamp": _now(),
            }
        )

    def to_dict(self) -> dict[str, Any]:
        return {"entries": self.entries}

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n")

    @classmethod
    def from_dict(cls, data: Any, source: str = "<input>") -> Catalog:
        if not isinstance(data, dict) or not isinstance(data.get("entries"), list):
            raise ParseError(f"{source}: catalog must be an object with an 'entries' list")
        for i, e in enumerate(data["entries"]):
            if not isinstance(e, dict) or not isinstance(e.get("params"), dict):
                raise ParseError(f"{source}: entry {i} has no params object")
            if not all(isinstance(e["params"].get(key), int) for key in ("n", "m", "k", "lambda")):
                raise ParseError(f"{source}: entry {i} params need integer n, m, k, lambda")
        return cls(list(data["entries"]))

    @classmethod
    def load(cls, path: str | Path) -> Catalog:
        return cls.from_dict(load_json(path), str(path))


def load_json(path: str | Path) -> Any:
    """Parse a JSON file, turning syntax errors into ParseError with file, line, column and offset."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: line {exc.lineno} column {exc.colno} (offset {exc.pos}): {exc.msg}") from None


def catalog_merge(paths: Iterable[str | Path]) -> Catalog:
    out = Catalog()
    for p in paths:
        for e in Catalog.load(p).entries:
            out.add(e)
    return out


# ---------------------------------------------------------------------------
# subcommands


def _emit(obj: Any, out: str | None) -> None:
    text = json.dumps(obj, indent=1)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _cmd_verify(args: argparse.Namespace) -> int:
    fam = family_from_dict(load_json(args.file))
    report = verify_edf(fam) if args.edf else verify_sedf(fam)
    _emit(report.to_dict(fam.group), args.out)
    return EXIT_OK if report.ok else EXIT_FAIL


def _cmd_construct(args: argparse.Namespace) -> int:
    cid = ConstructionId(args.name, tuple(args.params))
    try:
        fam = build(cid)
    except ConstructionRejected as exc:
        _emit({"construction": str(cid), "rejected": str(exc), "column": exc.column, "table": exc.table}, args.out)
        return EXIT_FAIL
    data = family_to_dict(fam)
    data["construction"] = {"name": cid.name, "parameters": list(cid.parameters)}
    _emit(data, args.out)
    return EXIT_OK


def _cmd_search(args: argparse.Namespace) -> int:
    G = parse_group(args.group)
    task = SearchTask(G, args.m, args.k, args.lam, args.sym, args.cap, args.max_nodes)
    res = exhaustive_search(task)
    _emit(
        {
            "group": G.literal(),
            "params": _params_dict(task.params),
            "symmetry": res.symmetry_used,
            "exhausted": res.exhausted,
            "capped": res.capped,
            "nodes_visited": res.nodes_visited,
            "families": [family_to_dict(f) for f in res.families],
        },
        args.out,
    )
    if args.catalog:
        cat = Catalog.load(args.catalog) if Path(args.catalog).exists() else Catalog()
        for f in res.families:
            cat.add_family(f, {"type": "search", "symmetry": res.symmetry_used})
        cat.save(args.catalog)
    return EXIT_OK


def _context(args: argparse.Namespace) -> GroupContext:
    if args.group:
        return GroupContext.explicit(parse_group(args.group))
    if args.cyclic:
        return GroupContext.cyclic()
    return GroupContext.unknown()


def _cmd_feasible(args: argparse.Namespace) -> int:
    verdict = check_all(SedfParams(args.n, args.m, args.k, args.lam), _context(args))
    out = verdict.to_dict()
    out["summary"] = str(verdict)
    _emit(out, args.out)
    return EXIT_OK


def _cmd_scan(args: argparse.Namespace) -> int:
    ctx = GroupContext.cyclic() if args.cyclic else GroupContext.unknown()
    cat = Catalog()
    for v in scan(args.max_n, lambda n: ctx):
        cat.add_verdict(v)
    _emit(cat.to_dict(), args.out)
    return EXIT_OK


def _cmd_cyclotomy(args: argparse.Namespace) -> int:
    F = field_of_order(args.q)
    S = cyclotomic_classes(F, args.e)
    _emit(
        {
            "q": F.q,
            "e": S.e,
            "f": S.f,
            "modulus": list(F.modulus),
            "primitive_element": F.encode(S.generator),
            "classes": [[F.encode(x) for x in c] for c in S.classes],
            "table": S.table(),
        },
        args.out,
    )
    return EXIT_OK


def _parse_element(tok: str) -> int | list[int]:
    try:
        parts = [int(x) for x in tok.split(",")]
    except ValueError:
        raise ParseError(f"bad element {tok!r}; use an integer or comma-separated coordinates") from None
    return parts[0] if len(parts) == 1 else parts


def _cmd_spectrum(args: argparse.Namespace) -> int:
    if args.family:
        fam = family_from_dict(load_json(args.family))
        G = fam.group
        D = fam.ring_elements()[args.set]
    else:
        if not args.group:
            raise ParseError("spectrum needs --group with elements, or --family")
        pres = parse_presentation(args.group)
        G = pres.group
        coeffs = [0] * G.order
        for tok in args.elements:
            coeffs[pres.to_canonical(_parse_element(tok)).rank] += 1
        D = GroupRingElement(G, coeffs)
    rows = []
    for idx, (g, v) in enumerate(spectrum(D).items()):
        z = v.to_complex()
        rows.append(
            {
                "character_index": idx,
                "character": list(g.coords),
                "value_poly_coeffs": [int(c) for c in v.coeffs],
                "value_complex_approx": [round(z.real, 12), round(z.imag, 12)],
            }
        )
    _emit(rows, args.out)
    return EXIT_OK


def _cmd_merge(args: argparse.Namespace) -> int:
    cat = catalog_merge(args.paths)
    _emit(cat.to_dict(), args.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="sedf", description="Strong external difference families: verify, construct, search, filter.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    def out_opt(p: argparse.ArgumentParser) -> None:
        p.add_argument("--out", "--json", dest="out", metavar="PATH", help="write JSON here instead of stdout")

    p = sub.add_parser("verify", help="verify a family JSON file")
    p.add_argument("file")
    p.add_argument("--edf", action="store_true", help="check the weaker EDF condition")
    out_opt(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("construct", help="run a registered construction")
    p.add_argument("name", choices=CONSTRUCTION_NAMES)
    p.add_argument("params", nargs="*", type=int)
    out_opt(p)
    p.set_defaults(fn=_cmd_construct)

    p = sub.add_parser("search", help="exhaustive search in one group")
    p.add_argument("--group", required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--sym", choices=("trans", "sets", "auto"), default="sets")
    p.add_argument("--cap", type=int, help="stop after this many families")
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--catalog", help="also record found families in this catalog file")
    out_opt(p)
    p.set_defaults(fn=_cmd_search)

    p = sub.add_parser("feasible", help="apply the nonexistence rules to one tuple")
    for name in ("n", "m", "k"):
        p.add_argument(name, type=int)
    p.add_argument("lam", type=int, metavar="lambda")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--group", help="explicit group literal, e.g. Z2xZ4")
    g.add_argument("--cyclic", action="store_true")
    out_opt(p)
    p.set_defaults(fn=_cmd_feasible)

    p = sub.add_parser("scan", help="verdicts for every tuple up to max-n")
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--cyclic", action="store_true")
    out_opt(p)
    p.set_defaults(fn=_cmd_scan)

    p = sub.add_parser("cyclotomy", help="cyclotomic classes and numbers of GF(q)")
    p.add_argument("q", type=int)
    p.add_argument("e", type=int)
    out_opt(p)
    p.set_defaults(fn=_cmd_cyclotomy)

    p = sub.add_parser("spectrum", help="character values of a multiset")
    p.add_argument("elements", nargs="*", help="elements as ints or comma-separated coordinates")
    p.add_argument("--group")
    p.add_argument("--family", help="family JSON; use --set to pick a set")
    p.add_argument("--set", type=int, default=0)
    out_opt(p)
    p.set_defaults(fn=_cmd_spectrum)

    p = sub.add_parser("merge", help="merge catalog files")
    p.add_argument("paths", nargs="+")
    out_opt(p)
    p.set_defaults(fn=_cmd_merge)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        return args.fn(args)
    except (SedfError, ValueError, IndexError) as exc:
        print(f"sedf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
