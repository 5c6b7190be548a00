import json
import shutil
import subprocess
import sys

import pytest

from dgatool import catalog as cat
from dgatool.cli import main
from dgatool.serialize import load_model, same_model


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv, "--json")
    return code, json.loads(out)


# usage errors exit 2 -------------------------------------------------------

def test_unknown_subcommand(capsys):
    assert run(capsys, "frobnicate")[0] == 2


def test_unknown_model(capsys):
    code, _, err = run(capsys, "cohomology", "nowhere")
    assert code == 2 and "neither" in err


def test_bad_expression(capsys):
    assert run(capsys, "massey", "heis1", "--triple", "a1", "a1", "b1^")[0] == 2
    assert run(capsys, "massey", "heis1", "--triple", "a1", "zz", "b1")[0] == 2


def test_bad_generator_option(capsys):
    assert run(capsys, "hirsch", "surface1", "--gen", "t", "--tau", "w")[0] == 2
    assert run(capsys, "hirsch", "surface1", "--gen", "t:1", "--gen", "s:1", "--tau", "w")[0] == 2


def test_bad_json_file(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    assert run(capsys, "cohomology", str(p))[0] == 2


def test_missing_required_option(capsys):
    assert run(capsys, "regular", "sp5su5")[0] == 2


# queries exit 0 --------------------------------------------------------------

def test_cohomology(capsys):
    code, doc = run_json(capsys, "cohomology", "heis2")
    assert code == 0 and doc["betti"] == [1, 4, 5, 5, 4, 1]
    code, out, _ = run(capsys, "cohomology", "heis1")
    assert "[1, 2, 2, 1]" in out


def test_massey(capsys):
    code, doc = run_json(capsys, "massey", "heis1", "--triple", "a1", "a1", "b1")
    assert code == 0 and doc["vanishes"] is False and doc["indeterminacy"] == []


def test_massey_sp5(capsys):
    code, doc = run_json(capsys, "massey", "sp5su5", "--triple", "x6", "x6", "x10")
    assert code == 0 and doc["vanishes"] is False and doc["degree"] == 21


def test_massey_not_exact_exits_1(capsys):
    assert run(capsys, "massey", "torus1", "--triple", "a1", "b1", "a1")[0] == 1


def test_regular_witness(capsys):
    code, out, _ = run(capsys, "regular", "sp5su5", "--q", "20")
    assert code == 0
    assert "is 20-regular: false" in out
    assert "degree 6" in out
    code, doc = run_json(capsys, "regular", "sp5su5", "--q", "19")
    assert code == 0 and doc["verdict"] is True and "witness" not in doc


def test_regular_explicit_sequence(capsys):
    code, doc = run_json(capsys, "regular", "torus2", "--seq", "a1*b1 + a2*b2", "--q", "2")
    assert code == 0 and doc["verdict"] is False
    code, doc = run_json(capsys, "regular", "heis2", "--q", "1")
    assert code == 0 and doc["verdict"] is True


def test_regular_odd_element_exits_1(capsys):
    assert run(capsys, "regular", "torus1", "--seq", "a1", "--q", "1")[0] == 1


def test_formality_and_emit_quotient(tmp_path, capsys):
    q = tmp_path / "quot.json"
    code, doc = run_json(capsys, "formality", "sp5su5", "--q", "19", "--emit-quotient", str(q))
    assert code == 0 and doc["verified"] is True
    Q = load_model(str(q))
    assert [k for k in range(Q.cap + 1) if Q.dim(k)] == [0, 6, 10]
    assert run(capsys, "formality", "sp5su5", "--q", "20")[0] == 1


def test_hirsch_out(tmp_path, capsys):
    p = tmp_path / "ext.json"
    code, out, _ = run(capsys, "hirsch", "s2xs2", "--gen", "t3:3", "--tau", "w", "--name", "hopf", "--out", str(p))
    assert code == 0 and "written" in out
    assert same_model(load_model(str(p)), load_model(str(p)))
    code, doc = run_json(capsys, "pd-check", str(p), "--dim", "7")
    assert code == 0 and doc["isPDCDGA"] is True


def test_holonomy(capsys):
    code, doc = run_json(capsys, "holonomy", "heis1")
    assert code == 0 and doc["lcs"] == [2, 1, 0, 0, 0]
    code, doc = run_json(capsys, "holonomy", "link2", "--eliminate", "--redundant", "--lcs-depth", "3")
    assert code == 0 and set(doc["relatorDegrees"]) <= {2, 3}
    assert run(capsys, "holonomy", "torus1", "--eliminate")[0] == 2


def test_pd_check_exit_codes(capsys):
    assert run(capsys, "pd-check", "hopf_s3", "--dim", "7")[0] == 0
    assert run(capsys, "pd-check", "poly", "--dim", "6")[0] == 1


def test_resonance_seed_and_env(capsys, monkeypatch):
    _, a = run_json(capsys, "resonance", "link2", "--samples", "15", "--seed", "9")
    _, b = run_json(capsys, "resonance", "link2", "--samples", "15", "--seed", "9")
    assert a == b and a["seed"] == 9
    monkeypatch.setenv("DGATOOL_SEED", "9")
    _, c = run_json(capsys, "resonance", "link2", "--samples", "15")
    assert c == a
    monkeypatch.delenv("DGATOOL_SEED")
    _, d = run_json(capsys, "resonance", "link2", "--samples", "15")
    assert d["seed"] == 42


def test_flat_classify(tmp_path, capsys):
    p = tmp_path / "om.json"
    p.write_text(json.dumps({"lie": "sl2", "coeffs": [["1", "0", "0"]] + [["0", "0", "0"]] * 4}))
    code, doc = run_json(capsys, "flat-classify", "link2", "--omega", str(p))
    assert code == 0 and doc["stratum"] in ("F1", "both") and doc["inPi"] is False
    p.write_text(json.dumps({"lie": "sl2", "coeffs": [["1", "0", "0"], ["0", "1", "0"]] + [["0", "0", "0"]] * 3}))
    assert run(capsys, "flat-classify", "link2", "--omega", str(p))[0] == 1
    p.write_text(json.dumps({"lie": "sl2", "coeffs": [["1", "0", "0"]]}))
    assert run(capsys, "flat-classify", "link2", "--omega", str(p))[0] == 2


def test_product_check(capsys):
    code, doc = run_json(capsys, "product-check", "--left", "surface1", "--right", "circle", "--q", "2", "--samples", "20")
    assert code == 0 and doc["ok"] is True
    assert run(capsys, "product-check", "--left", "surface1")[0] == 2


def test_catalog_list_and_build(tmp_path, capsys):
    code, doc = run_json(capsys, "catalog", "list")
    assert code == 0 and {e["key"] for e in doc["entries"]} == set(cat.catalog())
    p = tmp_path / "heis.json"
    assert run(capsys, "catalog", "build", "heis3", "--out", str(p))[0] == 0
    assert same_model(load_model(str(p)), cat.build("heis3"))
    code, doc = run_json(capsys, "catalog", "build", "heis1", "--flatten")
    assert code == 0 and doc["model"]["kind"] == "table"
    assert run(capsys, "catalog", "build")[0] == 2
    assert run(capsys, "catalog", "build", "nope")[0] == 2


def test_console_script_installed():
    exe = shutil.which("dgatool")
    assert exe is not None
    proc = subprocess.run([exe, "cohomology", "heis1", "--json"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["betti"] == [1, 2, 2, 1]
    proc = subprocess.run([sys.executable, "-m", "dgatool.cli", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0 and "catalog" in proc.stdout
