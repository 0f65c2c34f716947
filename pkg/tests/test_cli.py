import json
import subprocess
import sys

import pytest

from pregroups.cli import run
from pregroups.scenarios import data_dir

DATA = data_dir()


@pytest.fixture(scope="module")
def files(tmp_path_factory):
    d = tmp_path_factory.mktemp("pg")
    out = {}
    for kind, src, name in [("ls", "ls_c3_inversion.json", "ls3"), ("ls", "ls_c4_square_identity.json", "ls4"),
                            ("robinson", "robinson_s3.json", "rob"), ("amalgam", "amalgam_c4_c2_c4.json", "am"),
                            ("amalgam", "amalgam_c2_c4.json", "free")]:
        path = d / f"{name}.json"
        assert run(["build", kind, str(DATA / src), "-o", str(path)]) == 0
        out[name] = str(path)
    out["dir"] = d
    return out


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_check(files, capsys):
    assert run(["check", files["am"]]) == 0
    assert "all axioms hold" in capsys.readouterr().out


def test_check_reports_violation(files, tmp_path, capsys):
    data = json.load(open(files["ls3"]))
    k = data["products"].index(["a", "a", "a2"])
    data["products"][k][2] = "1"
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(data))
    code = run(["check", str(bad)])
    assert code == 1
    assert capsys.readouterr().out.strip()


@pytest.mark.parametrize("w1,w2,code", [("a,b", "a3,b3", 0), ("a,b", "b,a", 1), ("a2", "b,b", 0), ("a", "b", 1)])
def test_equal(files, w1, w2, code):
    assert run(["equal", files["am"], w1, w2]) == code


def test_equal_certificate(files, capsys):
    assert run(["equal", files["am"], "a,b", "a3,b3", "--emit-cert"]) == 0
    cert = _json(capsys)
    assert cert["equal"] is True


def test_reduce_trace(files, capsys):
    assert run(["reduce", files["am"], "a,a,b", "--trace"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert lines[-1] == "b3"


def test_build_deterministic(files, tmp_path):
    p = tmp_path / "again.json"
    assert run(["build", "ls", str(DATA / "ls_c3_inversion.json"), "-o", str(p)]) == 0
    assert json.load(open(p)) == json.load(open(files["ls3"]))


def test_build_with_seed(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(["build", "ls", str(DATA / "ls_c4_square_identity.json"), "--seed", "7", "-o", str(out)]) == 0
    assert a.read_text() == b.read_text()


def test_fusion_round_trip(files, capsys):
    assert run(["fusion-equal", files["ls3"], str(DATA / "ls_c3_inversion.json"), "--sylow", "a,a2"]) == 0
    assert run(["fusion", files["ls3"], "--sylow", "a,a2", "--full"]) == 0
    out = json.loads(capsys.readouterr().out.split("\n", 1)[1])
    assert out["axioms_ok"] and out["S"] == ["1", "a", "a2"]


def test_fusion_differs(files, tmp_path, capsys):
    assert run(["fusion-equal", files["ls4"], str(DATA / "ls_c4_square_identity.json"), "--sylow", "a,a2,a3"]) == 0
    inv = tmp_path / "inv.json"
    inv.write_text(json.dumps({"S": "C4", "p": 2, "generators": [
        {"source": ["1", "a", "a2", "a3"], "images": ["1", "a3", "a2", "a"]}]}))
    capsys.readouterr()
    assert run(["fusion-equal", files["ls4"], str(inv), "--sylow", "a,a2,a3"]) == 1
    assert "only in system 2" in capsys.readouterr().out
    assert run(["fusion-equal", files["ls3"], str(inv), "--sylow", "a,a2"]) == 2


def test_sylow(files, capsys):
    assert run(["sylow", files["ls3"], "--sylow", "a,a2", "--p", "3"]) == 0
    assert _json(capsys)["sylow"] is True
    assert run(["sylow", files["free"], "--sylow", "b,b2,b3"]) == 1
    assert _json(capsys)["counterexample"] == ["1", "a"]


def test_locality_refuted(files, capsys):
    assert run(["locality", files["ls3"], "--sylow", "a,a2", "--maxlen", "3"]) == 1
    assert "not a locality" in capsys.readouterr().out


def test_locality_of_group_is_verified(tmp_path, capsys):
    assert run(["build", "robinson", str(DATA / "robinson_s3.json"), "-o", str(tmp_path / "r.json")]) == 0
    capsys.readouterr()
    assert run(["locality", str(tmp_path / "r.json"), "--sylow", "a", "--objects", "1", "--maxlen", "3"]) == 0


def test_locality_truncated(tmp_path):
    assert run(["build", "robinson", str(DATA / "robinson_s3.json"), "-o", str(tmp_path / "r.json")]) == 0
    assert run(["locality", str(tmp_path / "r.json"), "--sylow", "a", "--objects", "1", "--maxlen", "6",
                "--max-words", "20"]) == 2


def test_presentation(files, capsys):
    assert run(["presentation", files["am"]]) == 0
    inv = _json(capsys)["abelian_invariants"]
    assert inv["rank"] == 0 and inv["torsion"] == [2, 4]


def test_nerve(files, capsys):
    assert run(["nerve", files["rob"], "--dim", "3"]) == 0
    assert _json(capsys)["counts"] == [1, 6, 36, 216]


@pytest.mark.parametrize("name", ["gl3", "ls-c3", "robinson-s3", "amalgam-c2c4"])
def test_scenarios(name, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["scenario", name, "-o", str(a)]) == 0
    assert run(["scenario", name, "-o", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["ok"] is True


@pytest.mark.parametrize("argv", [[], ["nosuch"], ["scenario", "nosuch"], ["check", "/nonexistent.json"],
                                  ["reduce", str(DATA / "c2.json"), "x"], ["locality", str(DATA / "c2.json")]])
def test_usage_errors(argv):
    assert run(argv) == 2


def test_bad_json(tmp_path):
    p = tmp_path / "x.json"
    p.write_text("{not json")
    assert run(["check", str(p)]) == 2


def test_resource_bound(files, monkeypatch):
    monkeypatch.setenv("PG_MAX_GROUP_ORDER", "2")
    assert run(["fusion-equal", files["ls4"], str(DATA / "ls_c4_square_identity.json"), "--sylow", "a,a2,a3"]) == 3


def test_console_entry_point(files):
    r = subprocess.run([sys.executable, "-m", "pregroups.cli", "check", files["am"]], capture_output=True, text=True)
    assert r.returncode == 0
