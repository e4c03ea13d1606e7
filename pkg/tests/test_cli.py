import json

import pytest

from ibifsa.cli import main

E3 = {"group": "cyclic:2", "alphabet": ["u"], "lambda": "1/2",
      "mu": {"u": [["1/2", "1/4"], ["1/4", "1/2"]]},
      "nu": {"u": [["1/4", "1/2"], ["1/2", "1/4"]]},
      "structure": "product-subgroup"}


@pytest.fixture
def files(tmp_path):
    paths = {}
    for name, doc in {"s": {"carrier": "group", "mu": ["1/2", "9/10"], "nu": ["2/5", "0"]},
                      "crisp": {"carrier": "group", "mu": ["1", "0"], "nu": ["0", "1"]},
                      "m": E3}.items():
        path = tmp_path / f"{name}.json"
        path.write_text(json.dumps(doc))
        paths[name] = str(path)
    paths["dir"] = tmp_path
    return paths


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_subgroup_verdict(capsys, files):
    code, out, _ = run(capsys, "check", "subgroup", "cyclic:2", files["s"], "--lambda", "1/2")
    assert code == 0
    assert "overall     3/5" in out and "PASS (3/5 >= 1/2)" in out
    code, out, _ = run(capsys, "check", "subgroup", "cyclic:2", files["s"], "--lambda", "2/3")
    assert code == 1 and "FAIL" in out


def test_check_without_lambda_prints_degrees(capsys, files):
    code, out, _ = run(capsys, "check", "normal", "cyclic:2", files["s"])
    assert code == 0 and "verdict" not in out


def test_machine_run(capsys, files):
    code, out, _ = run(capsys, "machine", "run", files["m"], "--from", "0", "--word", "u u",
                       "--to", "1")
    assert (code, out.strip()) == (0, "mu=1/4 nu=1/2")


def test_verify_thm_ext(capsys):
    code, out, _ = run(capsys, "verify", "thm-ext", "--group", "cyclic:2", "--denominator", "2",
                       "--max-len", "3")
    assert code == 0 and "counterexamples: 0" in out


def test_verify_mutate_exit_1(capsys):
    code, out, _ = run(capsys, "verify", "thm-ext", "--max-len", "2", "--mutate")
    assert code == 1


def test_verify_findings_exit_3(capsys, files):
    out_path = files["dir"] / "r.json"
    junit = files["dir"] / "r.xml"
    code, _, _ = run(capsys, "verify", "thm-subsemi-star", "--group", "symmetric:3",
                     "--denominator", "4", "--samples", "300", "--seed", "42",
                     "--format", "json", "-o", str(out_path), "--junit", str(junit))
    assert code == 3
    doc = json.loads(out_path.read_text())
    assert doc["report"]["finding_count"] > 0 and doc["report"]["counterexample_count"] == 0
    assert junit.read_text().startswith("<testsuite")


def test_machine_check_uses_document_lambda(capsys, files):
    code, out, _ = run(capsys, "check", "subsemi", files["m"], files["crisp"])
    assert code == 0 and "lambda=1/2: PASS" in out
    code, out, _ = run(capsys, "check", "subsemi", files["m"], files["crisp"], "--lambda", "1")
    assert code == 1
    code, out, _ = run(capsys, "check", "kernel-star", files["m"], files["crisp"],
                       "--max-len", "2", "--format", "json")
    doc = json.loads(out)
    assert doc["conditions"]["ii"] == "3/4" and "empty-word-identity" in doc["conventions"]


def test_group_round_trip(capsys, files):
    g = str(files["dir"] / "g.json")
    assert run(capsys, "group", "make", "cyclic:4", "-o", g)[0] == 0
    code, out, _ = run(capsys, "group", "validate", g)
    assert code == 0 and "order 4" in out


def test_machine_validate_and_extend(capsys, files):
    assert run(capsys, "machine", "validate", files["m"])[0] == 0
    code, out, _ = run(capsys, "machine", "extend", files["m"], "--word", "u u", "--format", "json")
    assert json.loads(out)["mu"] == [["1/2", "1/4"], ["1/4", "1/2"]]
    code, out, _ = run(capsys, "machine", "extend", files["m"], "--max-len", "3")
    assert code == 0


def test_hom(capsys, files):
    path = files["dir"] / "a.json"
    path.write_text(json.dumps({"carrier": "group", "mu": ["1", "1/2", "3/4", "1/2"],
                                "nu": ["0", "1/4", "1/4", "1/2"]}))
    code, out, _ = run(capsys, "hom", "image", "cyclic:4", "cyclic:2", "--map", "0,1,0,1",
                       str(path), "--format", "json")
    assert code == 0 and json.loads(out)["mu"] == ["1", "1/2"]
    code, _, err = run(capsys, "hom", "image", "cyclic:4", "cyclic:2", "--map", "0,1,1,0",
                       str(path))
    assert code == 2 and "NotHomomorphism" in err


@pytest.mark.parametrize("argv", [
    ["verify", "thm-nope"],
    ["check", "subgroup", "cyclic:3", "{s}"],
    ["check", "subgroup", "cyclic:2", "{s}", "--lambda", "0"],
    ["check", "subgroup", "cyclic:2", "{s}", "--lambda", "0.5"],
    ["machine", "run", "{m}", "--from", "0", "--word", "v", "--to", "1"],
    ["machine", "run", "{m}", "--from", "7", "--word", "u", "--to", "1"],
    ["verify", "thm-ext", "--group", "cyclic:3", "--denominator", "2"],
    ["group", "validate", "missing.json"],
    ["group", "make", "torus:2"],
    [],
])
def test_input_errors_exit_2(capsys, files, argv):
    argv = [a.format(**files) for a in argv]
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert err.startswith("error:") and len(err.strip().splitlines()) == 1


def test_verify_json_is_deterministic(capsys):
    argv = ["verify", "thm-kernel-star", "--group", "symmetric:3", "--denominator", "4",
            "--samples", "100", "--format", "json", "--max-len", "2"]
    bodies = []
    for workers in ("1", "2", "1"):
        run(capsys, *argv, "--workers", workers)
        _, out, _ = run(capsys, *argv, "--workers", workers)
        bodies.append(json.dumps(json.loads(out)["report"]))
    assert len(set(bodies)) == 1
