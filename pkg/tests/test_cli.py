import dataclasses
import json
import subprocess
import sys

import pytest

from basicnum import CONCLUSION_EXPECTED, verify_comment
from basicnum.cli import (EXIT_CONTRADICTED, EXIT_DEGENERATE,
                          EXIT_NOT_CONVERGED, EXIT_OK, EXIT_POLE,
                          EXIT_VALIDATION, main, parse_sequence_text)


def run_cli(*argv):
    return subprocess.run([sys.executable, "-m", "basicnum", *argv],
                          capture_output=True, text=True)


class TestParseSequenceText:
    def test_json_array(self):
        assert parse_sequence_text("[0, 1, 1, 2]") == [0.0, 1.0, 1.0, 2.0]

    def test_json_object_with_values(self):
        assert parse_sequence_text('{"values": [0, 1, 2]}') == [0.0, 1.0, 2.0]

    def test_single_comma_row(self):
        assert parse_sequence_text("0,1,1,2,3,5,8") == [0, 1, 1, 2, 3, 5, 8]

    def test_bare_column(self):
        assert parse_sequence_text("0\n1\n2\n3") == [0.0, 1.0, 2.0, 3.0]

    def test_two_column_csv_with_header(self):
        assert parse_sequence_text("n,value\n0,0.0\n1,1.0\n2,2.0") == [0.0, 1.0, 2.0]

    def test_header_without_value_column_rejected(self):
        with pytest.raises(ValueError, match="value"):
            parse_sequence_text("a,b\n1,2")

    def test_garbage_rejected(self):
        with pytest.raises(ValueError):
            parse_sequence_text("0\nbanana\n2")

    def test_empty_rejected(self):
        with pytest.raises(ValueError, match="empty"):
            parse_sequence_text("   \n ")


class TestGen:
    def test_mu_zero_csv(self, capsys):
        rc = main(["gen", "--family", "mu", "--mu", "0", "--max-index", "5",
                   "--format", "csv"])
        out = capsys.readouterr().out
        assert rc == EXIT_OK
        assert out.splitlines() == ["n,value", "0,0.0", "1,1.0", "2,2.0",
                                    "3,3.0", "4,4.0", "5,5.0"]

    def test_fibonacci_point_json(self, capsys):
        rc = main(["gen", "--family", "q", "--alpha", "1", "--beta", "1",
                   "--max-index", "7"])
        assert rc == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["family"] == "q"
        assert payload["params"]["alpha"] == 1.0
        assert payload["values"] == pytest.approx([0, 1, 1, 2, 3, 5, 8, 13],
                                                  rel=1e-12)

    def test_pole_exits_3_and_names_index(self, capsys):
        rc = main(["gen", "--family", "mu", "--mu", "-0.5", "--max-index", "3"])
        err = capsys.readouterr().err
        assert rc == EXIT_POLE
        assert "n=2" in err

    def test_missing_mu_is_validation_error(self, capsys):
        rc = main(["gen", "--family", "mu", "--max-index", "3"])
        assert rc == EXIT_VALIDATION

    def test_conflicting_q_parameterizations_rejected(self, capsys):
        rc = main(["gen", "--family", "q", "--s", "2", "--t", "1",
                   "--alpha", "3", "--beta", "-2", "--max-index", "5"])
        assert rc == EXIT_VALIDATION

    def test_zero_max_index_rejected(self, capsys):
        rc = main(["gen", "--family", "mu", "--mu", "0", "--max-index", "0"])
        assert rc == EXIT_VALIDATION

    def test_unknown_flag_exits_2(self, capsys):
        rc = main(["gen", "--family", "mu", "--mu", "0", "--max-index", "2",
                   "--frobnicate"])
        assert rc == EXIT_VALIDATION

    def test_out_writes_file(self, tmp_path, capsys):
        target = tmp_path / "seq.csv"
        rc = main(["gen", "--family", "mu", "--mu", "0", "--max-index", "2",
                   "--format", "csv", "--out", str(target)])
        assert rc == EXIT_OK
        assert capsys.readouterr().out == ""
        assert target.read_text().splitlines() == ["n,value", "0,0.0",
                                                   "1,1.0", "2,2.0"]


class TestFit:
    def test_fibonacci_verdict_from_file(self, tmp_path, capsys):
        src = tmp_path / "values.json"
        src.write_text("[0, 1, 1, 2, 3, 5, 8]")
        rc = main(["fit", "--input", str(src)])
        assert rc == EXIT_OK
        payload = json.loads(capsys.readouterr().out)
        assert payload["alpha"] == pytest.approx(1.0, abs=1e-12)
        assert payload["beta"] == pytest.approx(1.0, abs=1e-12)
        assert payload["fibonacci"] is True
        assert payload["first_mismatch"] is None

    def test_naturals_from_file(self, tmp_path, capsys):
        src = tmp_path / "values.csv"
        src.write_text("0\n1\n2\n3\n4\n5\n")
        rc = main(["fit", "--input", str(src)])
        payload = json.loads(capsys.readouterr().out)
        assert rc == EXIT_OK
        assert payload["alpha"] == pytest.approx(2.0, abs=1e-12)
        assert payload["beta"] == pytest.approx(-1.0, abs=1e-12)
        assert payload["fibonacci"] is False
        assert payload["first_mismatch"] == 2

    def test_too_short_exits_2(self, tmp_path):
        src = tmp_path / "values.csv"
        src.write_text("0\n0\n0\n")
        assert main(["fit", "--input", str(src)]) == EXIT_VALIDATION

    def test_degenerate_exits_4(self, tmp_path):
        src = tmp_path / "values.csv"
        src.write_text("1\n2\n4\n8\n16\n")
        assert main(["fit", "--input", str(src)]) == EXIT_DEGENERATE

    def test_missing_file_exits_2(self):
        assert main(["fit", "--input", "/nonexistent/values.csv"]) == EXIT_VALIDATION

    def test_comma_row_on_stdin(self):
        result = subprocess.run([sys.executable, "-m", "basicnum", "fit"],
                                input="0,1,1,2,3,5,8", capture_output=True,
                                text=True)
        assert result.returncode == EXIT_OK
        payload = json.loads(result.stdout)
        assert payload["alpha"] == pytest.approx(1.0, abs=1e-12)
        assert payload["beta"] == pytest.approx(1.0, abs=1e-12)
        assert payload["fibonacci"] is True

    def test_stdin_pipeline(self):
        gen = run_cli("gen", "--family", "q", "--alpha", "3", "--beta", "-2",
                      "--max-index", "9", "--format", "csv")
        assert gen.returncode == EXIT_OK
        fit = subprocess.run([sys.executable, "-m", "basicnum", "fit"],
                             input=gen.stdout, capture_output=True, text=True)
        assert fit.returncode == EXIT_OK
        payload = json.loads(fit.stdout)
        assert payload["alpha"] == pytest.approx(3.0, rel=1e-8)
        assert payload["beta"] == pytest.approx(-2.0, rel=1e-8)

    def test_json_pipeline_round_trip(self):
        gen = run_cli("gen", "--family", "q", "--s", "2", "--t", "1",
                      "--max-index", "8")
        fit = subprocess.run([sys.executable, "-m", "basicnum", "fit",
                              "--format", "csv"],
                             input=gen.stdout, capture_output=True, text=True)
        assert fit.returncode == EXIT_OK
        header, row = fit.stdout.splitlines()
        assert header == "alpha,beta,residual,method,fibonacci,first_mismatch"
        cells = row.split(",")
        assert float(cells[0]) == pytest.approx(3.0, rel=1e-8)
        assert float(cells[1]) == pytest.approx(-2.0, rel=1e-8)


class TestLimit:
    def test_mu_family_limit(self, capsys):
        rc = main(["limit", "--family", "mu", "--n", "5", "--tol", "1e-10"])
        payload = json.loads(capsys.readouterr().out)
        assert rc == EXIT_OK
        assert payload["value"] == pytest.approx(5.0, abs=1e-10)
        assert payload["converged"] is True
        assert payload["levels"] >= 3

    def test_composed_limit_hits_q_value(self, capsys):
        rc = main(["limit", "--family", "composed", "--alpha", "3",
                   "--beta", "-2", "--n", "2"])
        payload = json.loads(capsys.readouterr().out)
        assert rc == EXIT_OK
        assert payload["value"] == pytest.approx(3.0, abs=1e-10)

    def test_zero_index(self, capsys):
        rc = main(["limit", "--family", "mu", "--n", "0"])
        payload = json.loads(capsys.readouterr().out)
        assert rc == EXIT_OK
        assert payload["value"] == 0.0

    def test_q_family_is_constant_in_mu(self, capsys):
        rc = main(["limit", "--family", "q", "--s", "2", "--t", "1", "--n", "3"])
        payload = json.loads(capsys.readouterr().out)
        assert rc == EXIT_OK
        assert payload["value"] == 7.0
        assert payload["error_estimate"] == 0.0

    def test_not_converged_exits_5_but_prints(self, capsys):
        rc = main(["limit", "--family", "mu", "--n", "10", "--tol", "1e-12",
                   "--max-levels", "3"])
        out = capsys.readouterr().out
        assert rc == EXIT_NOT_CONVERGED
        payload = json.loads(out)
        assert payload["converged"] is False
        assert payload["levels"] == 4

    def test_pole_on_grid_exits_3(self, capsys):
        rc = main(["limit", "--family", "composed", "--s", "1", "--t", "-3",
                   "--n", "2"])
        assert rc == EXIT_POLE

    def test_mu_flag_rejected_for_mu_family(self, capsys):
        rc = main(["limit", "--family", "mu", "--mu", "0.1", "--n", "2"])
        assert rc == EXIT_VALIDATION


class TestVerifyComment:
    def test_defaults_exit_0_with_expected_conclusion(self, capsys):
        rc = main(["verify-comment"])
        payload = json.loads(capsys.readouterr().out)
        assert rc == EXIT_OK
        assert payload["conclusion"] == CONCLUSION_EXPECTED
        assert [r["fibonacci"] for r in payload["mu_results"]] == [False] * 3
        assert all(r["first_mismatch"] <= 2 for r in payload["mu_results"])
        assert payload["limit_fit"]["fit"]["alpha"] == pytest.approx(2.0, abs=1e-8)
        assert payload["limit_fit"]["fit"]["beta"] == pytest.approx(-1.0, abs=1e-8)
        assert payload["q_fit"]["fit"]["alpha"] == pytest.approx(1.0, abs=1e-8)
        assert payload["q_fit"]["fit"]["beta"] == pytest.approx(1.0, abs=1e-8)
        assert payload["q_fit"]["fibonacci"] is True

    def test_short_range_exits_2(self, capsys):
        assert main(["verify-comment", "--max-index", "3"]) == EXIT_VALIDATION

    def test_single_point_grid(self, capsys):
        rc = main(["verify-comment", "--mu-grid", "0.5"])
        payload = json.loads(capsys.readouterr().out)
        assert rc == EXIT_OK
        (entry,) = payload["mu_results"]
        assert entry["mu"] == 0.5
        assert entry["fibonacci"] is False

    def test_bad_grid_exits_2(self, capsys):
        assert main(["verify-comment", "--mu-grid", "0.1,bogus"]) == EXIT_VALIDATION

    def test_pole_in_grid_exits_3(self, capsys):
        assert main(["verify-comment", "--mu-grid", "-0.25"]) == EXIT_POLE

    def test_csv_format(self, capsys):
        rc = main(["verify-comment", "--format", "csv"])
        lines = capsys.readouterr().out.splitlines()
        assert rc == EXIT_OK
        assert lines[0] == ("section,mu,alpha,beta,residual,method,"
                            "fibonacci,first_mismatch,conclusion")
        assert lines[1].startswith("mu,0.1,")
        assert lines[-1].startswith("conclusion,")
        assert CONCLUSION_EXPECTED in lines[-1]

    def test_contradicted_report_exits_6(self, capsys, monkeypatch):
        report = verify_comment(max_index=5)
        doctored = dataclasses.replace(report, matches_expected=False,
                                       conclusion="contradicted: forced")
        monkeypatch.setattr("basicnum.cli.verify_comment",
                            lambda *a, **k: doctored)
        assert main(["verify-comment"]) == EXIT_CONTRADICTED

    def test_unconverged_limit_exits_5(self, capsys, monkeypatch):
        report = verify_comment(max_index=5)
        doctored = dataclasses.replace(
            report,
            limit_result=dataclasses.replace(report.limit_result, converged=False))
        monkeypatch.setattr("basicnum.cli.verify_comment",
                            lambda *a, **k: doctored)
        assert main(["verify-comment"]) == EXIT_NOT_CONVERGED


class TestDeterminism:
    @pytest.mark.parametrize("argv", [
        ("gen", "--family", "q", "--alpha", "1", "--beta", "1",
         "--max-index", "12"),
        ("gen", "--family", "mu", "--mu", "0.1", "--max-index", "8",
         "--format", "csv"),
        ("verify-comment",),
        ("verify-comment", "--format", "csv"),
    ])
    def test_repeated_runs_are_byte_identical(self, argv):
        first = run_cli(*argv)
        second = run_cli(*argv)
        assert first.returncode == second.returncode
        assert first.stdout == second.stdout
        assert first.stdout  # sanity: the command produced output


def test_help_exits_0(capsys):
    assert main(["--help"]) == 0
