import json
import shutil
import subprocess
import sys

import pytest

from conftest import h4, zn
from homcalc.cli import main, render_text
from homcalc.serialize import dump, dumps, from_spec, load, to_spec


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, out


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, h in (("z2", zn(2)), ("z3", zn(3)), ("z4", zn(4, 3)), ("h4", h4(-1))):
        p = tmp_path / f"{name}.json"
        dump(h, p)
        paths[name] = p
    paths["dir"] = tmp_path
    return paths


def write(path, obj):
    path.write_text(json.dumps(obj), encoding="utf-8")
    return path


# -- builtin / validate / twist --------------------------------------------

def test_builtin_then_validate(capsys, tmp_path):
    code, out = run(capsys, "builtin", "group_algebra_Zn", "--param", "n=2")
    assert code == 0
    spec = json.loads(out)
    assert spec["dim"] == 2 and spec["field"] == "Q"
    p = tmp_path / "z2.json"
    p.write_text(out, encoding="utf-8")
    code, out = run(capsys, "validate", p)
    assert code == 0
    assert json.loads(out)["report"]["passed"] is True


def test_builtin_sweedler_lambda(capsys):
    code, out = run(capsys, "builtin", "sweedler_h4", "--param", "lambda=2")
    assert code == 0
    assert from_spec(json.loads(out)) == h4(2)


def test_validate_levels(capsys, files):
    for level in ("algebra", "coalgebra", "bialgebra", "hopf"):
        code, out = run(capsys, "validate", files["h4"], "--level", level)
        assert code == 0


def test_singular_alpha_exit_one(capsys, files):
    spec = to_spec(zn(2))
    spec["alpha"] = [["1", "0"], ["0", "0"]]
    code, out = run(capsys, "validate", write(files["dir"] / "bad.json", spec))
    assert code == 1
    checks = {c["name"]: c for c in json.loads(out)["report"]["checks"]}
    assert checks["alpha_invertible"]["status"] == "fail"
    assert "SingularMatrix" in checks["alpha_invertible"]["witness"]


def test_broken_axiom_exit_one(capsys, files):
    spec = to_spec(zn(2))
    spec["mult"] = [e for e in spec["mult"] if e[:2] != [1, 1]]
    code, out = run(capsys, "validate", write(files["dir"] / "m.json", spec))
    assert code == 1
    assert json.loads(out)["report"]["passed"] is False


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["validate"],
    ["validate", "missing.json"],
    ["builtin", "nope"],
    ["builtin", "group_algebra_Zn", "--param", "n"],
    ["builtin", "group_algebra_Zn", "--param", "n=x"],
    ["validate", "{dir}/z2.json", "--level", "ring"],
])
def test_input_errors_exit_two(capsys, files, argv):
    argv = [a.format(dir=files["dir"]) for a in argv]
    code, out = run(capsys, *argv)
    assert code == 2
    err = json.loads(out)
    assert set(err) == {"error", "message", "witness"}


def test_malformed_files_exit_two(capsys, files):
    d = files["dir"]
    (d / "notjson.json").write_text("{bad", encoding="utf-8")
    code, out = run(capsys, "validate", d / "notjson.json")
    assert (code, json.loads(out)["error"]) == (2, "InputError")
    spec = to_spec(zn(2))
    spec["mult"].append([0, 5, 0, "1"])
    code, out = run(capsys, "validate", write(d / "range.json", spec))
    assert code == 2
    spec = to_spec(zn(2))
    spec["unit"] = ["1", "zero"]
    code, out = run(capsys, "validate", write(d / "scalar.json", spec))
    assert code == 2
    spec = to_spec(zn(2))
    del spec["counit"]
    code, out = run(capsys, "validate", write(d / "missing.json", spec))
    assert code == 2


def test_twist(capsys, files):
    alpha = write(files["dir"] / "alpha.json", [["1", "0", "0"], ["0", "0", "1"], ["0", "1", "0"]])
    code, out = run(capsys, "twist", files["z3"], "--alpha", alpha, "--name", "tw")
    assert code == 0
    h = from_spec(json.loads(out))
    assert h.name == "tw"
    assert h.mult == zn(3, 2).mult and h.alpha == zn(3, 2).alpha
    p = files["dir"] / "tw.json"
    p.write_text(out, encoding="utf-8")
    assert run(capsys, "validate", p)[0] == 0


def test_twist_by_singular_matrix(capsys, files):
    alpha = write(files["dir"] / "alpha.json", {"alpha": [["1", "0", "0"], ["0", "0", "0"], ["0", "1", "0"]]})
    code, out = run(capsys, "twist", files["z3"], "--alpha", alpha)
    assert code == 1
    assert json.loads(out)["error"] == "NotAutomorphism"


# -- calculus commands -----------------------------------------------------

def test_fodc_report(capsys, files):
    code, out = run(capsys, "fodc", files["z2"])
    assert code == 0
    body = json.loads(out)
    assert body["dim_gamma"] == 2 and body["coinvariant_dim"] == 1
    assert body["structure_functionals"]["F"] == {"1": [["1"]], "g": [["-1"]]}
    assert body["bicovariant"] is True


def test_fodc_with_ideal(capsys, files):
    ideal = write(files["dir"] / "r.json", {"ideal": [["0", "0", "1", "0"], ["0", "0", "0", "1"]]})
    code, out = run(capsys, "fodc", files["h4"], "--ideal", ideal)
    assert code == 0
    body = json.loads(out)
    assert body["dim_gamma"] == 4
    assert body["bicovariant"] is False
    assert body["ideal"] == [["0", "0", "1", "0"], ["0", "0", "0", "1"]]


def test_bad_ideal_exit_two(capsys, files):
    for vecs in ([["1", "0", "0", "0"]], [["1", "-1", "0", "0"]], [["0", "1"]], "nope"):
        ideal = write(files["dir"] / "r.json", vecs)
        code, out = run(capsys, "fodc", files["h4"], "--ideal", ideal)
        assert code == 2, vecs


def test_tangent_command(capsys, files):
    code, out = run(capsys, "tangent", files["z2"])
    assert code == 0
    body = json.loads(out)
    assert body["tangent_dim"] == 1
    assert body["basis"] == [["0", "1"]]
    assert body["dual_gram"] == [["1"]]


@pytest.mark.parametrize("mode", ["woronowicz", "flip"])
def test_bracket_command(capsys, files, mode):
    code, out = run(capsys, "bracket", files["z4"], "--braiding", mode)
    assert code == 0
    body = json.loads(out)
    assert body["braiding"] == mode
    assert len(body["bracket_table"]) == 9


def test_bracket_needs_bicovariance(capsys, files):
    ideal = write(files["dir"] / "r.json", [["0", "0", "1", "-1"]])
    code, out = run(capsys, "bracket", files["h4"], "--ideal", ideal)
    assert code == 1
    assert json.loads(out)["error"] == "NotBicovariant"


def test_dc_command(capsys, files, monkeypatch):
    code, out = run(capsys, "dc", files["z2"], "--max-degree", "3")
    assert code == 0
    assert json.loads(out)["max_degree"] == 3
    monkeypatch.setenv("HOMCALC_MAX_DEGREE", "2")
    code, out = run(capsys, "dc", files["z2"])
    assert json.loads(out)["max_degree"] == 2
    code, out = run(capsys, "dc", files["z2"], "--max-degree", "1")
    assert code == 2


def test_verify_small(capsys, files):
    code, out = run(capsys, "verify", files["z2"], "--max-degree", "3")
    assert code == 0
    body = json.loads(out)
    assert body["passed"] is True
    assert {"axioms", "serialization", "graded_calculus", "fodc", "tangent", "adjoint", "bicovariance",
            "lie_woronowicz", "lie_flip"} <= set(body["sections"])


def test_verify_non_bicovariant_ideal(capsys, files):
    ideal = write(files["dir"] / "r.json", [["0", "0", "1", "-1"]])
    code, out = run(capsys, "verify", files["h4"], "--ideal", ideal, "--max-degree", "2")
    assert code == 0
    body = json.loads(out)
    assert "lie" in body["sections"] and "lie_woronowicz" not in body["sections"]


def test_verify_broken_algebra_exit_one(capsys, files):
    spec = to_spec(h4(-1))
    spec["antipode"][2][2] = "1"
    code, out = run(capsys, "verify", write(files["dir"] / "b.json", spec))
    assert code == 1
    assert json.loads(out)["sections"]["axioms"]["passed"] is False


# -- output ----------------------------------------------------------------

def test_reports_are_byte_stable(capsys, files):
    for argv in (["fodc", files["h4"]], ["tangent", files["h4"]], ["bracket", files["z4"]]):
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        assert first == second
        assert first.endswith("\n")


def test_out_file_and_text(capsys, files):
    target = files["dir"] / "report.txt"
    code, out = run(capsys, "fodc", files["z2"], "--report", "text", "--out", target)
    assert code == 0
    assert target.read_text(encoding="utf-8") == out
    assert "PASS kernel_inclusion" in out


def test_text_rendering_shows_witness():
    body = {"report": {"subject": "s", "passed": False, "checks": [
        {"name": "law", "status": "fail", "witness": {"at": 1}},
        {"name": "extra", "status": "info", "note": "fyi"},
    ]}}
    lines = render_text(body)
    assert lines[0] == "report:"
    assert "FAIL law" in lines[2]
    assert '{"at": 1}' in lines[3]
    assert "INFO extra  (fyi)" in lines[4]


def test_spec_round_trip(capsys, files):
    for name in ("z2", "z4", "h4"):
        h = load(files[name])
        assert from_spec(json.loads(dumps(to_spec(h)))) == h
        assert dumps(to_spec(h)) == files[name].read_text(encoding="utf-8")


@pytest.mark.skipif(shutil.which("homcalc") is None, reason="console script not installed")
def test_console_script(files):
    res = subprocess.run(["homcalc", "validate", str(files["z2"])], capture_output=True, text=True)
    assert res.returncode == 0
    res = subprocess.run([sys.executable, "-m", "homcalc.cli", "validate", "nope.json"], capture_output=True, text=True)
    assert res.returncode == 2
