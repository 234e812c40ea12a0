import json
import subprocess
import sys

import pytest

from diffuse_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out), out


def test_ball(capsys):
    code, doc, _ = run(capsys, "ball", "weeks", "-r", "1")
    assert code == 0
    assert doc["schema"] == "diffuse-lab/1"
    assert doc["size"] == 5 and doc["spheres"] == [1, 4]
    assert {e["word"] for e in doc["elements"]} == {"", "a", "b", "A", "B"}


def test_ravel_none(capsys):
    code, doc, _ = run(capsys, "ravel", "weeks", "-r", "3")
    assert code == 1 and doc["ravel_size"] == 0
    code, doc, _ = run(capsys, "ravel", "z2", "-r", "3")
    assert code == 1 and doc["ravel"] == []


def test_weeks_ravel(capsys):
    code, doc, _ = run(capsys, "weeks", "ravel", "--minimal")
    assert code == 0
    assert doc["radius"] == 4 and doc["ravel_size"] == 141
    assert doc["ravel_verified"] and doc["min_ravel_verified"]
    assert "seconds" not in doc


def test_output_is_deterministic(capsys, tmp_path):
    out = tmp_path / "r.json"
    assert main(["ravel", "weeks", "-r", "4", "--minimal", "-o", str(out)]) == 0
    first = out.read_bytes()
    assert main(["ravel", "weeks", "-r", "4", "--minimal", "-o", str(out), "--threads", "3"]) == 0
    assert out.read_bytes() == first
    doc = json.loads(first)
    assert doc["ravel_size"] == 141 and doc["min_ravel_size"] >= 2


def test_timing_flag(capsys):
    _, doc, _ = run(capsys, "weeks", "systole", "--timing")
    assert "seconds" in doc
    _, doc, _ = run(capsys, "weeks", "systole")
    assert "seconds" not in doc
    assert doc["triples"] == 925 and len(doc["T"]) == 3


def test_certify(capsys):
    code, doc, _ = run(capsys, "certify", "weeks", "-r", "2")
    assert code == 1 and doc["verdict"] == "FAIL"
    code, doc, _ = run(capsys, "certify", "appendix_n", "-r", "1", "--traces", "appendix_traces")
    assert code == 0 and doc["verdict"] == "PASS-global"
    code, doc, _ = run(capsys, "certify", "appendix_n", "-r", "1")
    assert code == 0 and doc["verdict"] == "PASS-up-to-radius"


def test_crystal(capsys):
    code, doc, _ = run(capsys, "crystal", "betti", "promislow")
    assert code == 0 and doc["betti1"] == 0 and doc["torsion_free"]
    code, doc, _ = run(capsys, "crystal", "holonomy", "promislow")
    assert doc["class"] == "mixed" and doc["order"] == 4
    code, doc, _ = run(capsys, "crystal", "holonomy", "a5")
    assert doc["class"] == "anti-diffuse" and not doc["solvable"]
    code, doc, _ = run(capsys, "crystal", "holonomy", "z6")
    assert doc["class"] == "diffuse"
    code, doc, _ = run(capsys, "crystal", "ravel", "promislow", "--r0", "1")
    assert code == 0 and doc["ravel_size"] == 19 and doc["radius"] == "1"


def test_weeks_checks(capsys):
    code, doc, _ = run(capsys, "weeks", "verify")
    assert code == 0 and doc["verdict"] == "pass"
    code, doc, _ = run(capsys, "weeks", "orderability")
    assert code == 0 and doc["verdict"] == "pass" and doc["leaves"] == 23


def test_bad_tree(capsys, tmp_path):
    p = tmp_path / "t.json"
    p.write_text(json.dumps({"assume": "g", "node": {"leaf": "gH"}}))
    code, doc, _ = run(capsys, "weeks", "orderability", "--tree", str(p))
    assert code == 1 and doc["verdict"] == "fail"


@pytest.mark.parametrize("argv,err", [
    (["ball", "no-such-file.json"], "io"),
    (["ball", "weeks", "-r", "5", "--max-ball", "50"], "resource-cap"),
    (["ravel", "weeks", "--minimal", "--order", "sideways", "-r", "4"], "bad-argument"),
    (["crystal", "ravel", "z2lattice"], "io"),
])
def test_errors(capsys, argv, err):
    code, doc, _ = run(capsys, *argv)
    assert code == 2
    assert doc["error"]["code"] == err


def test_malformed_json(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{not json")
    code, doc, _ = run(capsys, "ball", str(p))
    assert code == 2 and doc["error"]["code"] == "malformed-json"
    p.write_text(json.dumps({"field": {"minpoly": [-1, 1]}}))
    code, doc, _ = run(capsys, "ball", str(p))
    assert code == 2 and doc["error"]["code"] == "malformed-input"


def test_betti_precondition(capsys, tmp_path):
    p = tmp_path / "z2.json"
    p.write_text(json.dumps({"dim": 2, "generators": [
        {"linear": [["1", "0"], ["0", "1"]], "translation": ["1", "0"]},
        {"linear": [["1", "0"], ["0", "1"]], "translation": ["0", "1"]}]}))
    code, doc, _ = run(capsys, "crystal", "ravel", str(p))
    assert code == 2 and doc["error"]["code"] == "precondition"


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "diffuse_lab.cli", "ball", "weeks", "-r", "2"],
                         capture_output=True, text=True, check=False)
    assert res.returncode == 0
    assert json.loads(res.stdout)["size"] == 17
