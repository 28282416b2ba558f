import json
import subprocess
import sys

import pytest

from superor.cli import main


def run(args, capsys):
    code = main(args)
    out = capsys.readouterr().out
    return code, out


def test_bracket_example(capsys):
    code, out = run(["bracket", "--alg", "S", "--x", "L:2", "--y", "L:-2"], capsys)
    assert code == 0
    assert json.loads(out) == {"result": [{"gen": "L", "mode": 0, "coeff": "-4"}, {"gen": "C1", "mode": 0, "coeff": "1/2"}]}


def test_half_integer_modes_are_strings(capsys):
    code, out = run(["bracket", "--x", "L:1", "--y", "G:-3/2"], capsys)
    assert json.loads(out) == {"result": [{"gen": "G", "mode": "-1/2", "coeff": "-3/2"}]}


def test_verma_dims(capsys):
    code, out = run(["verma", "--h1", "0", "--h2", "0", "--c1", "0", "--max-level", "2", "--dims"], capsys)
    assert code == 0 and json.loads(out) == [1, 1, 2, 3, 6]


def test_h2(capsys):
    code, out = run(["h2", "--epsilon", "1/2", "--window", "5", "--explicit"], capsys)
    data = json.loads(out)
    assert code == 0 and data["dimension"] == 2 and data["explicit"]["spans_h2"]


def test_checks(capsys):
    assert run(["jacobi-check", "--alg", "SVir12", "--window", "3"], capsys)[0] == 0
    assert run(["phi-check", "--window", "3"], capsys)[0] == 0
    assert run(["annihilation", "--preset", "SVir", "--window", "3", "--max-n", "1"], capsys)[0] == 0
    code, out = run(["derived-series", "--d", "1", "--t", "1", "--all"], capsys)
    assert code == 0 and len(json.loads(out)["series"]) == 4


def test_module_verbs(capsys):
    code, out = run(["whittaker", "--psi", "W_1=1", "--weight-bound", "3", "--samples", "5"], capsys)
    assert code == 0 and json.loads(out)["certified"]
    code, out = run(["claim1", "--term", "1:L_-1", "--term", "2:W_-1 G_-1/2"], capsys)
    assert code == 0 and json.loads(out)["passed"]
    code, out = run(["top-space", "--weight-bound", "3"], capsys)
    assert json.loads(out)["equals_v_part"]
    code, out = run(["restricted-probe", "--kind", "verma", "--samples", "3"], capsys)
    assert code == 0
    code, out = run(["singular", "--h1", "1", "--level", "1/2"], capsys)
    data = json.loads(out)
    assert data["dimension"] == 1 and data["singular_vectors"][0]["l0_eigenvalue"] == "1/2"


def test_induce(tmp_path, capsys):
    p = tmp_path / "v.json"
    p.write_text(json.dumps({"dim": 1, "c1": "0", "c2": "0", "actions": {"L_0": [["2"]], "W_0": [["1"]]}}))
    code, out = run(["induce", "--module", str(p), "--weight-bound", "1"], capsys)
    assert code == 0 and json.loads(out)["level_dims"] == [1, 1, 2]
    p.write_text(json.dumps({"dim": 1, "c2": "3", "actions": {"W_0": [["1"]]}}))
    code, out = run(["induce", "--module", str(p)], capsys)
    assert code == 1 and not json.loads(out)["validation"]["passed"]


def test_exit_codes(tmp_path, capsys):
    p = tmp_path / "bad.json"
    p.write_text('{"dim": 1,\n "c2": }')
    code, out = run(["induce", "--module", str(p)], capsys)
    assert code == 2 and "line 2" in json.loads(out)["message"]
    assert run(["h2", "--epsilon", "0", "--window", "2"], capsys)[0] == 2
    assert run(["bracket", "--x", "L:1/2", "--y", "L:1"], capsys)[0] == 2
    assert run(["whittaker", "--psi", "L_2=1"], capsys)[0] == 2
    assert run(["claim1", "--kind", "verma"], capsys)[0] == 1
    assert run(["nonsense"], capsys)[0] == 2


def test_text_format(capsys):
    code, out = run(["singular", "--level", "1/2", "--format", "text"], capsys)
    assert code == 0 and "dimension: 1" in out


@pytest.mark.parametrize("args", [["verma", "--dims"], ["whittaker", "--samples", "3", "--weight-bound", "2"]])
def test_byte_identical_runs(args):
    outs = [subprocess.run([sys.executable, "-m", "superor", *args], capture_output=True, text=True).stdout for _ in range(2)]
    assert outs[0] == outs[1] and outs[0]
