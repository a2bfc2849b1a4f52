import json

import pytest

import resolvent


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_verify_catalog(k):
    rep = resolvent.verify(resolvent.catalog(k))
    assert rep.ok
    assert rep["schema"] == 1
    assert rep["overall"] == "PASS"
    assert rep.verdict("exactness")["ok"]


def test_validate_grade():
    rep = resolvent.validate(resolvent.catalog(3))
    assert rep.exit_code == 0
    assert rep["grade"] == 2


def test_input_error():
    inst = resolvent.catalog(1)
    inst["f"] = ["x^2 +"]
    rep = resolvent.validate(inst)
    assert rep.exit_code == 2
    assert rep["error"]["kind"] == "ParseError"
    assert resolvent.validate("{not json").exit_code == 2


def test_homology_residue_field():
    rep = resolvent.homology(resolvent.catalog(1), module="x,y")
    assert rep.ok
    assert all(row["total"] == 2 for row in rep["tor"]["rows"])
    unit = resolvent.homology(resolvent.catalog(1), module="1")
    assert unit["tor"]["entries"] == []


def test_build_writes_artifacts(tmp_path):
    rep = resolvent.build(resolvent.catalog(1), tmp_path / "art")
    assert rep.ok
    names = sorted(p.name for p in (tmp_path / "art").iterdir())
    assert names == sorted(["F.json", "Fstar.json", "epsilon.json", "v.json", "T.json", "phi.json"])
    t = json.loads((tmp_path / "art" / "T.json").read_text())
    assert all(m["rank"] == 2 for m in t["modules"])


def test_path_input(tmp_path):
    p = tmp_path / "e2.json"
    p.write_text(json.dumps(resolvent.catalog(2)))
    assert resolvent.validate(str(p)).ok


def test_random_instances_verify():
    for seed in range(3):
        assert resolvent.verify(resolvent.random_instance(seed, "power"), degree_max=6).ok


def test_window_override():
    rep = resolvent.verify(resolvent.catalog(1), window=(-2, 3))
    assert rep["window"]["interior"] == [-1, 2]
    assert resolvent.verify(resolvent.catalog(1), window=(0, 1)).exit_code == 2
