import io
import json
import subprocess
import sys

import pytest

from awbench.cli import main
from awbench.interchange import parse_document


def run(*argv):
    out = io.StringIO()
    code = main(list(argv), out)
    return code, out.getvalue()


def test_check_awb_example():
    code, text = run("check", "awb2d")
    assert code == 0
    assert text.strip().endswith("awb-left: pass")


def test_check_failure_prints_counterexample():
    code, text = run("check", "awb2d-broken")
    assert code == 1
    assert "left-leibniz at (2,2,1)" in text


def test_machine_format():
    code, text = run("check", "awb2d-broken", "--format", "machine")
    payload = json.loads(text)
    assert code == 1 and payload["verdict"] == "fail"
    assert [2, 2, 2] in [v["indices"] for v in payload["violations"]]


def test_equiv_zero_cobracket():
    code, text = run("equiv", "zero-cobracket-2d")
    assert code == 0
    assert text.splitlines() == ["d-bialgebra: pass", "matched-pair: pass", "manin-triple: pass"]


def test_equiv_precondition():
    code, text = run("equiv", "bialg-coassoc-broken")
    assert code == 1 and "precondition failed" in text


def test_derive_awb_table():
    code, text = run("derive", "awb", "avg-3d")
    assert code == 0
    d = parse_document(text)
    assert d.kind == "algebra" and d.value.kind == "awb-left"
    obj = json.loads(text)
    assert obj["product"] == [[1, 1, 1, "1"], [1, 2, 2, "1"], [1, 3, 3, "1"]]
    assert obj["bracket"] == [[1, 2, 2, "1"], [1, 3, 3, "-1"]]


@pytest.mark.parametrize("construction,files", [
    ("semidirect", ["rep-adjoint-3d"]),
    ("semidirect", ["rep-awb2d-regular"]),
    ("hemisemi", ["avg-unit-3d"]),
    ("hemisemi", ["rep-adjoint-3d"]),
    ("bowtie", ["matched-pair-3d"]),
    ("bowtie", ["ap2d-unit", "ap2d-lie"]),
    ("double", ["poisson-bialg-2d"]),
    ("dendrify", ["rb-identity-3d"]),
    ("dual-rep", ["rep-adjoint-3d"]),
    ("dual-coalgebra", ["coalg-1d"]),
    ("associated", ["tridend-3d"]),
])
def test_derive_outputs_pass(tmp_path, construction, files):
    code, text = run("derive", construction, *files)
    assert code == 0
    path = tmp_path / "out.json"
    path.write_text(text)
    code, _ = run("check", str(path))
    assert code == 0


def test_params_and_bad_params():
    code, _ = run("check", "awb2d-param", "--param", "alpha=2", "--param", "beta=3",
                  "--param", "gamma=5", "--param", "nu=7")
    assert code == 0
    assert run("check", "awb2d-param", "--param", "beta=0")[0] == 2


def test_input_errors_exit_2(tmp_path):
    assert run("check", "no-such-file")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "algebra", "dim": 2, "product": [[1, 1, 9, 1]]}')
    assert run("check", str(bad))[0] == 2
    assert run("derive", "double", "awb2d")[0] == 2


def test_bracket_form_flag():
    assert run("check", "avg-3d")[0] == 0
    assert run("check", "avg-3d", "--bracket-form", "mu")[0] == 1


def test_report_has_no_surprises():
    code, text = run("report")
    assert code == 0
    assert text.strip().endswith("0 unexpected verdicts")


def test_console_script_entry():
    proc = subprocess.run([sys.executable, "-m", "awbench.cli", "check", "awb2d"], capture_output=True, text=True)
    assert proc.returncode == 0 and "pass" in proc.stdout
