from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from daschur.basis import basis_poly
from daschur.cli import main
from daschur.lattice import LatticeFunction, Window
from daschur.serialize import dumps, lattice_function_to_json


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    return code, json.loads(out)


def write_json(tmp_path, name, obj) -> str:
    path = tmp_path / name
    path.write_text(dumps(obj))
    return str(path)


def test_basis_eval(capsys):
    assert run_json(capsys, "basis", "--n", "2", "--eval", "1+0i") == (0, {"value": "0+0i"})
    assert run_json(capsys, "basis", "--n", "2", "--eval", "i") == (0, {"value": "-1/2-1/2i"})


def test_basis_window_feeds_check_da(capsys, tmp_path):
    code, obj = run_json(capsys, "basis", "--n", "4", "--window", "0,3,-1,2")
    assert code == 0
    path = write_json(tmp_path, "b4.json", obj)
    assert run_json(capsys, "check-da", "--file", path) == (0, {"analytic": True, "violations": []})


def test_check_da_cube(capsys, tmp_path):
    f = LatticeFunction.from_callable(Window(0, 1, 0, 1), lambda z: z**3)
    path = write_json(tmp_path, "z3.json", lattice_function_to_json(f))
    code, obj = run_json(capsys, "check-da", "--file", path)
    assert code == 0
    assert obj == {"analytic": False, "violations": [{"x": 0, "y": 0, "lhs": "0+2i", "rhs": "0+1i"}]}


def test_integrate_and_z_op(capsys):
    f = dumps(lattice_function_to_json(LatticeFunction.constant(Window(0, 2, 0, 2), 1)))
    assert run_json(capsys, "integrate", "--json", f, "--path", "0,1,1+i") == (0, {"value": "1+1i"})
    code, obj = run_json(capsys, "z-op", "--json", f)
    vals = {(e["x"], e["y"]): e["v"] for e in obj["values"]}
    assert code == 0 and vals[(2, 1)] == "2+1i"


def test_coeffs_and_convolve(capsys):
    f = dumps(lattice_function_to_json(basis_poly(2).on_window(Window(0, 3, 0, 1))))
    code, obj = run_json(capsys, "coeffs", "--json", f, "--N", "3")
    assert code == 0 and obj["coeffs"] == ["0+0i", "0+0i", "1+0i"]
    a = json.dumps({"coeffs": ["1", "1"]})
    b = json.dumps({"coeffs": ["1", "-1"]})
    code, obj = run_json(capsys, "convolve", "--a", a, "--b", b)
    assert obj["coeffs"] == ["1+0i", "0+0i", "-1+0i"]


def test_genfun(capsys):
    code, obj = run_json(capsys, "genfun", "--z", "0+1i", "--t", "0,0")
    assert obj["num"] == ["1+0i", "1/2+1/2i"] and obj["den"] == ["1+0i", "1/2-1/2i"]
    assert obj["value"] == {"re": 1.0, "im": 0.0}


def test_kernel_and_gram(capsys):
    assert run_json(capsys, "kernel", "--w", "1", "--z", "1") == (0, {"re": 2.0, "im": 0.0, "err": 0.0})
    code, obj = run_json(capsys, "gram", "--points", "0,1")
    assert obj["psd"] is True
    assert [[e["re"] for e in row] for row in obj["matrix"]] == [[1.0, 1.0], [1.0, 2.0]]


def test_eval_rational(capsys):
    el = json.dumps({"num": ["1/2"], "den": ["1", "-1/2"]})
    code, obj = run_json(capsys, "eval", "--element", el, "--z", "0")
    assert code == 0 and abs(obj["re"] - 0.5) <= obj["err"] + 1e-15


def test_schur_check_verbs(capsys):
    assert run_json(capsys, "schur-check", "--element", json.dumps({"coeffs": ["1"]}))[1]["kind"] == "exact-inner"
    code, obj = run_json(capsys, "schur-check", "--element", json.dumps({"coeffs": ["2"]}))
    assert obj["kind"] == "not-schur" and obj["witness"]["modulus"] > 1


def test_blaschke_verify(capsys):
    code, obj = run_json(capsys, "blaschke", "--lambda", "0+1i", "--verify")
    assert code == 0
    assert obj["degree"] == 2 and obj["certificate"]["kind"] == "exact-inner"
    assert [(r["x"], r["y"]) for r in obj["residuals"]] == [(0, 0), (0, 1)]
    for r in obj["residuals"]:
        assert abs(complex(r["re"], r["im"])) <= r["err"] and r["ok"]


def test_interpolate_and_member(capsys, tmp_path):
    path = write_json(tmp_path, "prob.json", {"lambda": {"x": 1, "y": 0}, "N": 3})
    code, obj = run_json(capsys, "interpolate", "--problem", path)
    assert [b["coeffs"] for b in obj["basis"]] == [["0+0i", "0+0i", "1+0i"], ["0+0i", "0+0i", "0+0i", "1+0i"]]
    # output of interpolate is accepted by member
    poly = json.dumps(obj["basis"][1])
    code, obj = run_json(capsys, "member", "--poly", poly, "--lambda", "1")
    assert obj["member"] is True and obj["quotient"]["coeffs"] == ["0+0i", "1+0i"]
    code, obj = run_json(capsys, "member", "--poly", json.dumps({"coeffs": ["0", "1"]}), "--lambda", "1")
    assert obj == {"member": False, "quotient": None}


def _csv_rows(text):
    return list(csv.DictReader(io.StringIO(text)))


def test_export_tables(capsys):
    code, out = run(capsys, "export", "basis-table", "--max-n", "2", "--window", "0,1,0,0")
    rows = _csv_rows(out)
    assert code == 0 and list(rows[0]) == ["n", "x", "y", "re", "im"]
    assert {"n": "2", "x": "1", "y": "0", "re": "0.0", "im": "0.0"} in rows
    code, out = run(capsys, "export", "kernel-heatmap", "--w", "0", "--window", "0,2,-1,1")
    rows = _csv_rows(out)
    assert list(rows[0]) == ["zx", "zy", "wx", "wy", "re", "im", "err"]
    assert all(float(r["re"]) == 1.0 and float(r["im"]) == 0.0 and float(r["err"]) <= 1e-15 for r in rows)
    code, out = run(capsys, "export", "boundary-modulus", "--sign", "+")
    rows = _csv_rows(out)
    assert len(rows) == 4096 and list(rows[0]) == ["theta", "modulus"]
    assert max(abs(float(r["modulus"]) - 1) for r in rows) <= 1e-12


def test_domain_errors_exit_1(capsys):
    code, obj = run_json(capsys, "basis", "--n", "2", "--eval", "1.5")
    assert code == 1 and "error" in obj
    code, obj = run_json(capsys, "kernel", "--w", "-1", "--z", "0")
    assert code == 1 and "error" in obj
    code, obj = run_json(capsys, "export", "basis-table", "--max-n", "-1", "--window", "0,1,0,0")
    assert code == 1
    code, obj = run_json(capsys, "check-da", "--file", "/nonexistent.json")
    assert code == 1


def test_usage_error_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["basis"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["no-such-verb"])
    assert exc.value.code == 2


def test_output_file_and_env_override(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv("DASCHUR_OUTPUT_DIR", str(tmp_path))
    assert main(["--output", "k.json", "kernel", "--w", "0", "--z", "0"]) == 0
    assert json.loads((tmp_path / "k.json").read_text())["re"] == 1.0


def test_determinism(capsys):
    argv = ["gram", "--points", "0,1,1+i,2-i"]
    assert run(capsys, *argv) == run(capsys, *argv)


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "daschur", "basis", "--n", "2", "--eval", "1+0i"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"value": "0+0i"}
    proc = subprocess.run([sys.executable, "-m", "daschur", "basis"], capture_output=True, text=True)
    assert proc.returncode == 2 and "required" in proc.stderr
