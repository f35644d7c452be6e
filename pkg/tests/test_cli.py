import json

import numpy as np
import pytest

from ginverse import oracle
from ginverse.cli import main
from ginverse.matcore import approx_equal, matrix_from_json, matrix_to_json


def write_matrix(path, values):
    path.write_text(json.dumps(matrix_to_json(np.array(values, dtype=complex))))
    return str(path)


@pytest.fixture
def identity3(tmp_path):
    return write_matrix(tmp_path / "i3.json", np.eye(3))


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestCompute:
    def test_mwgi_identity(self, capsys, identity3):
        code, out, _ = run_cli(capsys, "compute", "--inverse", "mwgi", "--m", "2", "--input", identity3)
        assert code == 0
        assert approx_equal(matrix_from_json(json.loads(out)), np.eye(3))

    @pytest.mark.parametrize("inverse", ["mp", "group", "drazin", "core", "core-ep"])
    def test_classical_inverses_on_identity(self, capsys, identity3, inverse):
        code, out, _ = run_cli(capsys, "compute", "--inverse", inverse, "--input", identity3)
        assert code == 0
        assert approx_equal(matrix_from_json(json.loads(out)), np.eye(3))

    @pytest.mark.parametrize(
        "route", ["core-ep", "power", "normal", "drazin-solve", "core-of-drazin", "core-chain"]
    )
    def test_routes(self, capsys, tmp_path, route):
        path = write_matrix(tmp_path / "a.json", [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
        code, out, _ = run_cli(capsys, "compute", "--input", path, "--route", route, "--m", "1")
        assert code == 0
        got = matrix_from_json(json.loads(out))
        assert approx_equal(got, np.diag([1.0, 0.0, 0.0]).astype(complex))

    def test_regular_lift_route_needs_m2(self, capsys, identity3):
        code, _, err = run_cli(
            capsys, "compute", "--input", identity3, "--route", "regular-lift", "--m", "1"
        )
        assert code == 2
        assert "m >= 2" in err

    def test_group_inverse_missing_exits_1(self, capsys, tmp_path):
        path = write_matrix(tmp_path / "j2.json", [[0, 1], [0, 0]])
        code, _, err = run_cli(capsys, "compute", "--inverse", "group", "--input", path)
        assert code == 1
        assert "rank" in err

    def test_output_file(self, capsys, tmp_path, identity3):
        target = tmp_path / "out.json"
        code, out, _ = run_cli(
            capsys, "compute", "--input", identity3, "--output", str(target)
        )
        assert code == 0 and out == ""
        assert approx_equal(matrix_from_json(json.loads(target.read_text())), np.eye(3))


class TestVerify:
    def test_bad_candidate_fails_ax2(self, capsys, tmp_path):
        a = write_matrix(tmp_path / "a.json", np.eye(2))
        x = write_matrix(tmp_path / "x.json", 2 * np.eye(2))
        code, out, _ = run_cli(capsys, "verify", "--input", a, "--candidate", x, "--m", "1")
        assert code == 1
        payload = json.loads(out)
        assert payload["checks"]["ax2"]["pass"] is False
        assert payload["overall"] is False

    def test_compute_then_verify_roundtrip(self, capsys, tmp_path):
        a = write_matrix(tmp_path / "a.json", [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
        z_path = tmp_path / "z.json"
        code, _, _ = run_cli(
            capsys, "compute", "--input", a, "--m", "2", "--output", str(z_path)
        )
        assert code == 0
        code, out, _ = run_cli(
            capsys, "verify", "--input", a, "--candidate", str(z_path), "--m", "2"
        )
        assert code == 0
        assert json.loads(out)["overall"] is True

    def test_env_tolerance_override(self, capsys, tmp_path, monkeypatch):
        # an absurdly tight equality tolerance makes benign roundoff fail
        a_mat = np.array([[1.0, 0.5], [0.0, 2.0]])
        a = write_matrix(tmp_path / "a.json", a_mat)
        z_path = tmp_path / "z.json"
        run_cli(capsys, "compute", "--input", a, "--output", str(z_path))
        monkeypatch.setenv("GINV_TOL_EQ", "1e-30")
        code, _, _ = run_cli(capsys, "verify", "--input", a, "--candidate", str(z_path))
        assert code == 1
        monkeypatch.setenv("GINV_TOL_EQ", "1e-8")
        code, _, _ = run_cli(capsys, "verify", "--input", a, "--candidate", str(z_path))
        assert code == 0


class TestInputErrors:
    def test_missing_file(self, capsys):
        code, _, err = run_cli(capsys, "compute", "--input", "/nonexistent.json")
        assert code == 2

    def test_malformed_json_line_diagnostic(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"rows": 2,\n "cols": }')
        code, _, err = run_cli(capsys, "compute", "--input", str(path))
        assert code == 2
        assert ":2:" in err  # line number of the syntax error

    def test_wrong_entry_count(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"rows": 2, "cols": 2, "entries": [[1, 0]]}))
        code, _, err = run_cli(capsys, "compute", "--input", str(path))
        assert code == 2
        assert "entries" in err

    def test_non_finite_entry(self, capsys, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"rows": 1, "cols": 1, "entries": [[NaN, 0]]}')
        code, _, _ = run_cli(capsys, "compute", "--input", str(path))
        assert code == 2

    def test_non_square_for_square_only_inverse(self, capsys, tmp_path):
        path = write_matrix(tmp_path / "rect.json", np.ones((2, 3)))
        code, _, err = run_cli(capsys, "compute", "--inverse", "drazin", "--input", path)
        assert code == 2
        assert "square" in err


class TestSolve:
    def test_identity(self, capsys, tmp_path, identity3):
        b = write_matrix(tmp_path / "b.json", np.arange(9).reshape(3, 3))
        code, out, _ = run_cli(capsys, "solve", "--input", identity3, "--b", b)
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["free_part_used"] is False

    def test_with_free_term(self, capsys, tmp_path):
        a = write_matrix(tmp_path / "a.json", [[1, 0, 0], [0, 0, 1], [0, 0, 0]])
        b = write_matrix(tmp_path / "b.json", np.ones((3, 3)))
        y = write_matrix(tmp_path / "y.json", np.eye(3))
        code, out, _ = run_cli(capsys, "solve", "--input", a, "--b", b, "--y", y, "--m", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["pass"] is True
        assert payload["free_part_used"] is True


class TestShift:
    def test_word_and_table(self, capsys):
        code, out, _ = run_cli(capsys, "shift", "--m", "2", "--window", "8", "--pretty")
        assert code == 0
        assert "S3∘L2" in out
        assert "overall: PASS" in out

    def test_json_report(self, capsys):
        code, out, _ = run_cli(capsys, "shift", "--m", "1", "--window", "8")
        assert code == 0
        payload = json.loads(out)
        assert payload["word"] == "S2∘L1"
        assert payload["report"]["overall"] is True
        assert all(c["residual"] == 0.0 for c in payload["report"]["checks"].values())

    def test_window_validation(self, capsys):
        code, _, err = run_cli(capsys, "shift", "--m", "3", "--window", "2")
        assert code == 2


class TestFuzz:
    def test_deterministic_given_seed(self, capsys):
        code1, out1, _ = run_cli(capsys, "fuzz", "--trials", "12", "--seed", "5")
        code2, out2, _ = run_cli(capsys, "fuzz", "--trials", "12", "--seed", "5")
        assert code1 == code2 == 0
        assert out1 == out2  # byte-identical reports

    def test_overall_pass(self, capsys):
        code, out, _ = run_cli(capsys, "fuzz", "--trials", "9", "--seed", "3")
        assert code == 0
        payload = json.loads(out)
        assert payload["overall"] is True
        assert payload["failures"] == []

    def test_fixed_m(self, capsys):
        code, out, _ = run_cli(capsys, "fuzz", "--trials", "6", "--seed", "4", "--m", "2")
        assert code == 0
        payload = json.loads(out)
        assert payload["m_values"] == [2]


class TestToleranceFlags:
    def test_explicit_flag_beats_env(self, capsys, tmp_path, monkeypatch):
        a = write_matrix(tmp_path / "a.json", np.diag([1.0, 2.0]))
        z_path = tmp_path / "z.json"
        run_cli(capsys, "compute", "--input", a, "--output", str(z_path))
        monkeypatch.setenv("GINV_TOL_EQ", "1e-30")
        code, _, _ = run_cli(
            capsys, "verify", "--input", a, "--candidate", str(z_path), "--tol-eq", "1e-8"
        )
        assert code == 0  # the flag overrides the hostile env value


class TestCertify:
    def test_rational_input(self, capsys, tmp_path):
        a = oracle.RationalMatrix.from_rows([[1, 0, 0], [0, 0, 1], [0, 0, 0]])
        path = tmp_path / "a.json"
        path.write_text(json.dumps(a.to_json()))
        code, out, _ = run_cli(capsys, "certify", "--input", str(path), "--m", "1")
        assert code == 0
        payload = json.loads(out)
        assert payload["report"]["overall"] is True
        assert payload["float_mwgi_pass"] is True

    def test_generated_trials(self, capsys):
        code, out, _ = run_cli(capsys, "certify", "--trials", "3", "--seed", "2")
        assert code == 0
        assert json.loads(out)["overall"] is True
