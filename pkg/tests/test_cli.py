import json
import subprocess
import sys

import pytest

from subshiftkit.cli import REPRODUCE, main, pow2_distance, reproduce, run


def report(argv):
    code, text = run(argv)
    return code, (json.loads(text) if text else None)


def test_lang():
    code, doc = report(["lang", "even", "010"])
    assert code == 0 and doc["result"] == {"word": "010", "in_language": False}
    assert doc["tool"] == "subshiftkit" and doc["command"] == "lang"
    assert doc["shift"]["name"] == "even"
    code, doc = report(["lang", "even", "0110"])
    assert code == 0 and doc["result"]["in_language"] is True


def test_follower_and_circuit():
    code, doc = report(["follower", "even", "01", "011"])
    assert code == 0 and doc["result"]["unique_point"] == "(1)"
    code, doc = report(["circuit", "even", "11"])
    assert code == 0 and doc["result"]["strong_exit"] == "(0)"


def test_paction():
    code, doc = report(["paction", "even", "0^-1", "(1)"])
    assert code == 0
    code, doc = report(["paction", "even", "0", "1(0)"])
    assert code == 0


def test_criteria_markov3():
    code, doc = report(["criteria", "markov3"])
    assert code == 0
    r = doc["result"]
    assert r["simple"]["value"] is True
    assert r["surjective"]["value"] is False
    assert all(d.get("replay_failures", []) == [] for d in r.values())


def test_criteria_only():
    code, doc = report(["criteria", "even", "--only", "simple"])
    assert code == 0 and list(doc["result"]) == ["simple"]
    assert doc["result"]["simple"]["value"] is False
    code, doc = report(["criteria", "golden", "--only", "cofinality"])
    assert set(doc["result"]) == {"cofinal", "strongly_cofinal", "collectively_cofinal", "hyper_cofinal"}


def test_cost():
    code, doc = report(["cost", "pow2", "--B", "0", "--x", "11111(0)"])
    assert code == 0 and doc["result"]["cost"] == pow2_distance(5) == 1
    code, doc = report(["cost", "pow2", "--B", "0", "--sup"])
    assert code == 0 and doc["result"]["cost"] == "inf" and doc["result"]["replay_failures"] == []
    code, doc = report(["cost", "even", "--B", "01", "--sup"])
    assert code == 0 and doc["result"]["cost"] <= 1


def test_spectrum_writes_dot(tmp_path):
    dot = tmp_path / "ball.dot"
    code, doc = report(["spectrum", "even", "(1)", "--radius", "2", "--dot", str(dot)])
    assert code == 0 and doc["result"]["validation"]["value"] is True
    assert dot.read_text().startswith("digraph spectrum {")


def test_limit():
    code, doc = report(["limit", "even", "--family", "even-odd-ones", "--radius", "2"])
    assert code == 0 and doc["result"]["report"]["stabilized"] is True
    assert "0^-1" not in doc["result"]["ball"]["members"]


def test_exit_code_one_on_failed_check():
    code, doc = report(["limit", "even", "--family", "even-odd-ones", "--radius", "2", "--k-max", "2"])
    assert code == 1 and doc["result"]["ball"] is None


@pytest.mark.parametrize(
    "argv",
    [
        ["lang", "nosuchshift", "0"],
        ["lang", "even", "012"],
        ["paction", "even", "0", "(2)"],
        ["limit", "even", "--family", "nope", "--radius", "2"],
        ["cost", "even", "--B", "0"],
        ["reproduce", "nope"],
        ["bogus"],
    ],
)
def test_exit_code_two_on_bad_input(argv):
    code, text = run(argv)
    assert code == 2 and text is None


def test_bad_spec_file(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert main(["lang", str(bad), "0"]) == 2
    assert main(["lang", str(tmp_path / "missing.json"), "0"]) == 2


def test_spec_file_round_trip(tmp_path):
    _, doc = report(["lang", "golden", "10"])
    path = tmp_path / "golden_copy.json"
    path.write_text(json.dumps({k: v for k, v in doc["shift"].items() if k != "name"}))
    code, doc2 = report(["lang", str(path), "10"])
    assert code == 0 and doc2["result"] == doc["result"]


def test_output_is_deterministic_and_out_flag(tmp_path):
    argv = ["criteria", "golden"]
    _, first = run(argv)
    _, second = run(argv)
    assert first == second
    out = tmp_path / "r.json"
    code, text = run(["--out", str(out)] + argv)
    assert code == 0 and out.read_text() == first == text
    assert json.loads(first) == json.loads(json.dumps(json.loads(first)))


@pytest.mark.parametrize("example_id", sorted(REPRODUCE))
def test_reproduce(example_id):
    r = reproduce(example_id)
    assert r["passed"], [c for c in r["checks"] if not c["ok"]]
    code, doc = report(["reproduce", example_id])
    assert code == 0 and doc["result"]["passed"] is True


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "subshiftkit", "lang", "even", "010"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout)["result"]["in_language"] is False
    proc = subprocess.run([sys.executable, "-m", "subshiftkit", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip()
