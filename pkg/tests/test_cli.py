from __future__ import annotations

import json

import pytest

from sedf.cli import Catalog, catalog_merge, run
from sedf.constructions import CONSTRUCTION_NAMES, ConstructionId, build
from sedf.errors import ConflictError, ParseError
from sedf.feasibility import check_all, GroupContext
from sedf.groupring import family_from_dict, family_to_dict, verify_sedf
from sedf.params import SedfParams


def output(capsys):
    return json.loads(capsys.readouterr().out)


def test_verify_ok_and_fail(tmp_path, capsys):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"group": "Z5", "m": 2, "k": 2, "lambda": 1, "sets": [[1, 4], [2, 3]]}))
    assert run(["verify", str(good)]) == 0
    assert output(capsys)["ok"] is True
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"group": "Z5", "m": 2, "k": 2, "lambda": 1, "sets": [[1, 2], [3, 4]]}))
    assert run(["verify", str(bad)]) == 1
    assert output(capsys)["ok"] is False
    assert run(["verify", "--edf", str(good)]) == 0
    assert output(capsys)["matched_lambda"] == 2


def test_verify_malformed_reports_location(tmp_path, capsys):
    f = tmp_path / "broken.json"
    f.write_text('{\n  "group": "Z5",\n  "sets": [1, 2\n}')
    assert run(["verify", str(f)]) == 2
    err = capsys.readouterr().err
    assert "broken.json" in err and "line 4" in err


def test_usage_errors(capsys):
    assert run([]) == 2
    assert run(["construct", "nonsense", "1"]) == 2
    assert run(["search", "--group", "Z12", "--m", "3", "--k", "2"]) == 2
    capsys.readouterr()


def test_construct_and_roundtrip(tmp_path, capsys):
    out = tmp_path / "f.json"
    assert run(["construct", "theorem_4_3", "1", "--json", str(out)]) == 0
    data = json.loads(out.read_text())
    assert (data["n"], data["m"], data["k"], data["lambda"]) == (17, 2, 4, 1)
    assert run(["verify", str(out)]) == 0
    capsys.readouterr()
    assert run(["construct", "theorem_4_3", "2"]) == 2
    assert run(["construct", "cyclotomic_e", "13", "4"]) == 1
    assert "table" in output(capsys)


@pytest.mark.parametrize(
    "cid",
    [
        ConstructionId("singletons", (5,)),
        ConstructionId("lambda1_two_set", (4,)),
        ConstructionId("paley_type", (9,)),
        ConstructionId("paley_type", (49,)),
        ConstructionId("cyclotomic_e", (17, 4)),
        ConstructionId("theorem_4_3", (1,)),
        ConstructionId("theorem_4_6", (1,)),
    ],
    ids=str,
)
def test_serialize_verify_pipeline(cid, tmp_path, capsys):
    assert cid.name in CONSTRUCTION_NAMES
    fam = build(cid)
    f = tmp_path / "fam.json"
    f.write_text(json.dumps(family_to_dict(fam)))
    assert family_from_dict(json.loads(f.read_text())) == fam
    assert run(["verify", str(f)]) == 0
    assert output(capsys)["ok"]


def test_feasible(capsys):
    assert run(["feasible", "35", "5", "4", "2"]) == 0
    d = output(capsys)
    assert d["outcome"] == "infeasible"
    assert dict(d["trace"])["R13"] == "fail"
    assert run(["feasible", "49", "5", "8", "2", "--cyclic"]) == 0
    assert dict(output(capsys)["trace"])["R12"] == "fail"
    assert run(["feasible", "9", "2", "4", "2", "--group", "Z3xZ3"]) == 0
    assert output(capsys)["construction"]["name"] == "paley_type"


def test_search(tmp_path, capsys):
    out = tmp_path / "found.json"
    cat = tmp_path / "cat.json"
    assert run(["search", "--group", "Z17", "--m", "2", "--k", "4", "--sym", "auto", "--cap", "10000", "--out", str(out), "--catalog", str(cat)]) == 0
    d = json.loads(out.read_text())
    assert d["exhausted"] and d["families"]
    for f in d["families"]:
        assert verify_sedf(family_from_dict(f)).ok
    assert len(Catalog.load(cat)) == len(d["families"])


def test_scan(tmp_path):
    out = tmp_path / "catalog.json"
    assert run(["scan", "--max-n", "10", "--out", str(out)]) == 0
    cat = Catalog.load(out)
    outcomes = {(e["params"]["n"], e["params"]["m"], e["params"]["k"]): e["verdict"]["outcome"] for e in cat.entries}
    assert outcomes[(5, 2, 2)] == "known_exists"
    assert outcomes[(10, 3, 3)] == "infeasible"


def test_cyclotomy(capsys):
    assert run(["cyclotomy", "17", "4"]) == 0
    d = output(capsys)
    assert d["classes"][0] == [1, 13, 16, 4]
    assert d["table"][0][2] == 1 and len(d["table"]) == 4
    assert run(["cyclotomy", "13", "5"]) == 2


def test_spectrum(tmp_path, capsys):
    assert run(["spectrum", "--group", "Z5", "1", "4"]) == 0
    rows = output(capsys)
    assert len(rows) == 5
    assert rows[0]["value_poly_coeffs"] == [2, 0, 0, 0]
    assert rows[1]["value_complex_approx"][0] == pytest.approx(2 * 0.30901699437494745)
    f = tmp_path / "fam.json"
    f.write_text(json.dumps({"group": "Z2xZ2", "lambda": 1, "sets": [[[0, 0]], [[0, 1]], [[1, 0]], [[1, 1]]]}))
    assert run(["spectrum", "--family", str(f), "--set", "2"]) == 0
    assert len(output(capsys)) == 4


def _verdict_entry(n, m, k, lam, ctx=None):
    cat = Catalog()
    cat.add_verdict(check_all(SedfParams(n, m, k, lam), ctx or GroupContext()))
    return cat.entries[0]


def test_catalog_merge(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    Catalog([_verdict_entry(5, 2, 2, 1), _verdict_entry(10, 2, 3, 1)]).save(a)
    Catalog([_verdict_entry(9, 3, 2, 1)]).save(b)
    assert len(catalog_merge([a, b])) == 3
    assert len(catalog_merge([a, a])) == 2

    fam_cat = tmp_path / "fam.json"
    c = Catalog()
    c.add_family(build(ConstructionId("paley_type", (13,))), {"type": "construction", "id": "paley_type(13)"})
    c.save(fam_cat)
    merged = catalog_merge([a, fam_cat, fam_cat])
    assert len(merged) == 3

    roundtrip = tmp_path / "rt.json"
    merged.save(roundtrip)
    assert Catalog.load(roundtrip).entries == merged.entries


def test_catalog_conflict(tmp_path):
    e = _verdict_entry(5, 2, 2, 1)
    other = json.loads(json.dumps(e))
    other["verdict"]["outcome"] = "infeasible"
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    Catalog([e]).save(a)
    Catalog([other]).save(b)
    with pytest.raises(ConflictError) as info:
        catalog_merge([a, b])
    assert "known_exists" in str(info.value) and "infeasible" in str(info.value)


def test_catalog_parse_error(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"entries": [}')
    with pytest.raises(ParseError) as info:
        catalog_merge([bad])
    assert "bad.json" in str(info.value) and "offset 13" in str(info.value)
    assert run(["merge", str(bad)]) == 2
    capsys.readouterr()
