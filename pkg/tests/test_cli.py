import json
import subprocess
import sys

import pytest

from shuffle_lab.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--json")
    return code, json.loads(out)


@pytest.mark.parametrize("m,s,words,phi", [
    (2, 3, ["aab", "abb"], 2),
    (1, 2, [], 0),
    (2, 1, ["a", "b"], 2),
])
def test_lyndon(capsys, m, s, words, phi):
    code, rep = run_json(capsys, "lyndon", "--alphabet", str(m), "-s", str(s))
    assert code == 0
    assert rep["outputs"] == {"words": words, "phi": phi}
    assert list(rep) == ["command", "inputs", "outputs", "passed"]


@pytest.mark.parametrize("f,g,result", [("a", "b", "ab + ba"), ("ab", "a", "2*aab + aba"), ("a", "", "a")])
def test_shuffle(capsys, f, g, result):
    code, out = run(capsys, "shuffle", f, g)
    assert code == 0 and out.strip() == result


def test_shuffle_round_trip(capsys):
    _, rep = run_json(capsys, "shuffle", "2*aab + aba", "b - a")
    code, rep2 = run_json(capsys, "shuffle", rep["outputs"]["result"], "1")
    assert code == 0 and rep2["outputs"]["result"] == rep["outputs"]["result"]


def test_concat(capsys):
    _, out = run(capsys, "shuffle", "a + b", "a", "--concat")
    assert out.strip() == "aa + ba"


@pytest.mark.parametrize("m,s,p,dim,match,code", [
    (2, 2, 5, 1, True, 0),
    (1, 5, 5, 1, False, 0),
    (3, 4, 7, 18, True, 0),
])
def test_indec(capsys, m, s, p, dim, match, code):
    rc, rep = run_json(capsys, "indec", "--alphabet", str(m), "-s", str(s), "-p", str(p))
    assert rc == code
    assert rep["outputs"]["dim"] == dim and rep["outputs"]["match"] is match
    assert rep["outputs"]["formula_applies"] is (s < p)


def test_indec_mismatch_flagged_in_text(capsys):
    _, out = run(capsys, "indec", "--alphabet", "1", "-s", "5", "-p", "5")
    assert "mismatch" in out


def test_indec_integral(capsys):
    _, rep = run_json(capsys, "indec", "--alphabet", "1", "-s", "4", "-p", "3", "--integral")
    assert rep["outputs"]["integral"] == {"torsion": [2], "free_rank": 0}


@pytest.mark.parametrize("n,s,p", [(3, 2, 2), (3, 3, 3), (4, 2, 2)])
def test_unipotent(capsys, n, s, p):
    code, rep = run_json(capsys, "unipotent", "--n", str(n), "-s", str(s), "-p", str(p))
    out = rep["outputs"]
    assert code == 0 and rep["passed"]
    assert out["lemma_a"] and out["lemma_b"] and out["lemma_c"]
    assert out["exponent_formula"] == out["exponent_measured"]


def test_unipotent_cap_is_invalid_input(capsys):
    code, _ = run(capsys, "unipotent", "--n", "4", "-s", "3", "-p", "5", "--cap", "1000")
    assert code == 2


def test_magnus(capsys):
    code, rep = run_json(capsys, "magnus", "ab", "ab", "--n", "2", "-p", "3")
    assert code == 0
    assert rep["outputs"]["q"] == 3
    assert rep["outputs"]["rho"] == [[1, 1, 1], [0, 1, 1], [0, 0, 1]]


def test_magnus_modulus_flag(capsys):
    _, by_n = run_json(capsys, "magnus", "abA", "ab", "--n", "3", "-p", "2")
    _, by_q = run_json(capsys, "magnus", "abA", "ab", "-q", "4", "-p", "2")
    assert by_n == by_q
    assert by_q["outputs"]["rho"] == [[1, 0, 1], [0, 1, 1], [0, 0, 1]]
    assert run(capsys, "magnus", "ab", "ab", "-q", "8", "--n", "3", "-p", "2")[0] == 2


@pytest.mark.parametrize("argv", [
    ["lyndon", "-s", "0"],
    ["indec", "-s", "2", "-p", "4"],
    ["shuffle", "a", "c"],
    ["magnus", "xy", "ab", "--n", "2", "-p", "3"],
    ["magnus", "ab", "ab", "--n", "2", "-p", "3", "-q", "6"],
    ["magnus", "ab", "abb", "--n", "2", "-p", "3"],
    ["unipotent", "--n", "3", "-s", "4", "-p", "2"],
    ["lyndon", "-s", "2", "--alphabet", "0"],
])
def test_invalid_input_exit_2(capsys, argv):
    assert main(argv) == 2
    assert "error" in capsys.readouterr().err


def test_missing_argument_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["indec", "-s", "2"])
    assert exc.value.code == 2


@pytest.mark.parametrize("argv", [
    ["lyndon", "-s", "5", "--alphabet", "3"],
    ["magnus", "abAB", "aba", "--n", "4", "-p", "2"],
    ["unipotent", "--n", "3", "-s", "2", "-p", "3"],
])
def test_json_byte_identical(argv):
    cmd = [sys.executable, "-m", "shuffle_lab.cli", *argv, "--json"]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and a


def test_verify_quick(capsys):
    code, rep = run_json(capsys, "verify", "--profile", "quick", "--trials", "20")
    assert code == 0 and rep["passed"]
    names = [c["name"] for c in rep["outputs"]["criteria"]]
    assert names == sorted(names) and len(names) == 10
    assert rep["inputs"]["seed"] == 20260101


def test_verify_failure_exit_1(capsys, monkeypatch):
    from shuffle_lab import acceptance

    bad = acceptance.CriterionResult("lyndon_count", False, {}, 0.0)
    monkeypatch.setattr(acceptance, "run_all", lambda profile, seed: [bad])
    code, out = run(capsys, "verify")
    assert code == 1 and "[FAIL] lyndon_count" in out
