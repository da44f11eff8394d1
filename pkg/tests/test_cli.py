"""Command line front end: flags, exit codes, JSON output, determinism."""

import json

import numpy as np
import pytest

from curvop.cli import main
from curvop.jsonio import tensor_to_dict
from curvop.tensors import random_curvature


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def write_model(tmp_path, capsys, *argv):
    code, out = run_cli(capsys, *argv)
    assert code == 0
    path = tmp_path / "tensor.json"
    path.write_text(out)
    return path


def test_model_sphere_emits_valid_tensor(tmp_path, capsys):
    code, out = run_cli(capsys, "model", "--name", "sphere", "--n", "4", "--c", "1")
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4 and payload["format"] == "dense"
    assert len(payload["components"]) == 256


def test_model_then_checkknn_positive(tmp_path, capsys):
    path = write_model(tmp_path, capsys, "model", "--name", "sphere", "--n", "4", "--c", "1")
    code, out = run_cli(capsys, "check-knn", "--input", str(path), "--k", "1")
    assert code == 0
    assert json.loads(out)["holds"] is True


def test_s2xs2_fails_45(tmp_path, capsys):
    path = write_model(tmp_path, capsys, "model", "--name", "s2xs2")
    code, out = run_cli(capsys, "check-knn", "--input", str(path), "--k", "4.5")
    assert code == 1
    payload = json.loads(out)
    assert payload["holds"] is False
    assert payload["weighted_sum"] == pytest.approx(-1.0, abs=1e-9)
    # rational flag spelling is accepted
    code2, out2 = run_cli(capsys, "check-knn", "--input", str(path), "--k", "9/2")
    assert code2 == 1
    assert json.loads(out2)["weighted_sum"] == pytest.approx(-1.0, abs=1e-9)


def test_spectrum_subcommand(tmp_path, capsys):
    path = write_model(tmp_path, capsys, "model", "--name", "sphere", "--n", "5")
    code, out = run_cli(capsys, "spectrum", "--input", str(path))
    assert code == 0
    payload = json.loads(out)
    assert payload["N"] == 14
    np.testing.assert_allclose(payload["eigenvalues"], np.ones(14), atol=1e-12)


def test_cone_subcommand(tmp_path, capsys):
    cp2 = write_model(tmp_path, capsys, "model", "--name", "cp2")
    code, out = run_cli(capsys, "cone", "--input", str(cp2))
    assert code == 0 and json.loads(out)["holds"] is True


def test_classify4d_subcommand(tmp_path, capsys):
    prod = write_model(tmp_path, capsys, "model", "--name", "s2xs2")
    code, out = run_cli(capsys, "classify4d", "--input", str(prod))
    assert code == 0
    assert json.loads(out)["branch_hint"] == "product_like"


def test_bound_subcommand(tmp_path, capsys):
    spec_path = tmp_path / "spectrum.json"
    spec_path.write_text(json.dumps({"eigenvalues": [-1.0, 0.5, 2.0, 3.0]}))
    code, out = run_cli(
        capsys, "bound", "--spectrum", str(spec_path), "--omega", "1", "--total", "2"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["bound"] == pytest.approx(-0.5)
    assert payload["certified_nonnegative"] is False


def test_verify_subcommand(capsys):
    code, out = run_cli(
        capsys, "verify", "--n", "4", "--trials", "5", "--seed", "42", "--tol", "1e-9"
    )
    assert code == 0
    payload = json.loads(out)
    assert payload["n"] == 4 and payload["seed"] == 42
    assert all(c["passed"] for c in payload["checks"])


def test_verify_determinism(capsys):
    _, out1 = run_cli(capsys, "verify", "--n", "5", "--trials", "5", "--seed", "42")
    _, out2 = run_cli(capsys, "verify", "--n", "5", "--trials", "5", "--seed", "42")
    assert out1 == out2


def test_verify_suite_filter(capsys):
    code, out = run_cli(
        capsys, "verify", "--n", "5", "--trials", "3", "--seed", "1",
        "--suite", "scalar_ricci_bounds",
    )
    assert code == 0
    payload = json.loads(out)
    assert [c["name"] for c in payload["checks"]] == ["scalar_ricci_bounds"]


def test_bad_flags_exit_2(capsys):
    assert main(["check-knn"]) == 2
    assert main(["model", "--name", "nonsense"]) == 2
    assert main(["bogus"]) == 2
    assert main(["verify", "--n", "5", "--suite", "nope"]) == 2


def test_invalid_tensor_input_exit_2(tmp_path, capsys):
    d = tensor_to_dict(random_curvature(4, 1))
    d["components"][3] += 1.0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps(d))
    assert main(["spectrum", "--input", str(bad)]) == 2


def test_stdin_input(tmp_path, capsys, monkeypatch):
    import io

    _, out = run_cli(capsys, "model", "--name", "sphere", "--n", "4")
    monkeypatch.setattr("sys.stdin", io.StringIO(out))
    code, out2 = run_cli(capsys, "check-knn", "--input", "-", "--k", "1")
    assert code == 0
    assert json.loads(out2)["holds"] is True


def test_env_tolerance_override(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("CURVOP_TOL", "1e-6")
    code, _ = run_cli(capsys, "verify", "--n", "4", "--trials", "2", "--seed", "3")
    assert code == 0
    monkeypatch.setenv("CURVOP_TOL", "not-a-number")
    assert main(["verify", "--n", "4", "--trials", "2", "--seed", "3"]) == 2
