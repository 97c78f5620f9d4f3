from __future__ import annotations

import json

import pytest
from conftest import FIXTURES

from fano_lines.cli import main


def run(capsys, *args):
    code = main([str(a) for a in args])
    return code, capsys.readouterr()


def test_validate_passes(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, cap = run(capsys, "validate", FIXTURES / "FX-N2.json", "--out", out)
    assert code == 0
    rep = json.loads(out.read_text())
    assert rep["schema"].startswith("fano-lines-report/")
    assert rep["fixture"] == "FX-N2"
    assert all(c["status"] == "pass" for c in rep["checks"])
    assert "passed" in cap.out


def test_report_is_deterministic(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for p in (a, b):
        code, _ = run(capsys, "phi", FIXTURES / "FX-C1.json", "--samples", 30, "--seed", 4, "--out", p)
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert "runtime" not in a.read_text()


def test_plane_in_Y_is_expected_behaviour(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _ = run(capsys, "phi", FIXTURES / "FX-N2.json", "--samples", 20, "--out", out)
    assert code == 0
    checks = {c["name"]: c for c in json.loads(out.read_text())["checks"]}
    assert checks["phi.designed_plane"]["status"] == "pass"
    assert checks["phi.designed_plane"]["witness"]["plane_in_Y"] > 0


def test_equivariance_not_applicable_on_nodal(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _ = run(capsys, "equivariance", FIXTURES / "FX-N1.json", "--out", out)
    assert code == 0
    assert {c["status"] for c in json.loads(out.read_text())["checks"]} == {"not_applicable"}


def test_field_and_prime_flags(capsys, tmp_path):
    out = tmp_path / "r.json"
    code, _ = run(capsys, "phi-inv", FIXTURES / "FX-N1.json", "--field", "q_sqrt_d", "--out", out)
    assert code == 0
    status = {c["name"]: c["status"] for c in json.loads(out.read_text())["checks"]}
    assert status == {"phi_inv.node_lines_rejected": "not_applicable",
                      "phi_inv.quadratic_field": "pass", "phi_inv.section": "not_applicable"}
    code, _ = run(capsys, "phi", FIXTURES / "FX-N1.json", "--field", "q_zeta3", "--out", out)
    assert code == 0
    assert {c["status"] for c in json.loads(out.read_text())["checks"]} == {"not_applicable"}
    code, _ = run(capsys, "divisors", FIXTURES / "FX-N1.json", "--prime", 4, "--out", out)
    assert code == 2


def test_malformed_json_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "nodal", "q": [{"c": "x", "exp": [0, 1, 1, 0, 0, 0]}], "k": []}')
    code, cap = run(capsys, "validate", bad)
    assert code == 2 and "'q'" in cap.err
    bad.write_text("{oops")
    code, cap = run(capsys, "validate", bad)
    assert code == 2 and "<json>" in cap.err
    code, cap = run(capsys, "validate", tmp_path / "missing.json")
    assert code == 2


def test_failing_check_exit_1(capsys, tmp_path):
    data = json.loads((FIXTURES / "FX-N1.json").read_text())
    data["points"].append(["0", "1", "1", "1", "1", "1"])  # not on Sigma
    p = tmp_path / "off.json"
    p.write_text(json.dumps(data))
    code, cap = run(capsys, "validate", p)
    assert code == 1 and "FAIL" in cap.out


def test_usage_errors_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 2
