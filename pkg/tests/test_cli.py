import io
import json
import math
import subprocess
import sys

import pandas as pd
import pytest

from kstruve.cli import cli, table_grid
from kstruve.errors import DomainError, QuadratureError
from kstruve.struve import StruveParams, struve
from kstruve.verification import SUITE_ORDER

H0_ARGS = ["eval", "--nu", "0", "--k", "1", "--c", "1", "--x", "1"]


def read_csv(text: str) -> pd.DataFrame:
    return pd.read_csv(io.StringIO(text), float_precision="round_trip")


class TestEval:
    def test_classical_value(self, cli_runner):
        result = cli_runner.invoke(cli, H0_ARGS)
        assert result.exit_code == 0
        frame = read_csv(result.stdout)
        assert list(frame.columns) == ["x", "value", "err_estimate", "terms"]
        assert frame["value"][0] == pytest.approx(0.5686566, abs=1e-6)
        assert frame["terms"][0] > 1

    def test_zero_argument(self, cli_runner):
        result = cli_runner.invoke(cli, ["eval", "--nu", "0", "--k", "1", "--c", "1", "--x", "0"])
        assert result.exit_code == 0
        assert read_csv(result.stdout)["value"][0] == 0.0

    def test_json_carries_the_csv_fields(self, cli_runner):
        as_csv = read_csv(cli_runner.invoke(cli, H0_ARGS).stdout).iloc[0]
        as_json = json.loads(cli_runner.invoke(cli, [*H0_ARGS, "--json"]).stdout)
        assert set(as_json) == {"x", "value", "err_estimate", "terms"}
        assert as_json["value"] == as_csv["value"]
        assert as_json["terms"] == as_csv["terms"]

    def test_value_survives_csv_exactly(self, cli_runner):
        result = cli_runner.invoke(cli, ["eval", "--nu", "1.5", "--k", "2", "--c", "-0.7", "--x", "3.3"])
        expected = struve(StruveParams(1.5, 2.0, -0.7), 3.3).value
        assert read_csv(result.stdout)["value"][0] == expected

    def test_modified_variant(self, cli_runner):
        result = cli_runner.invoke(
            cli, ["eval", "--nu", "0.5", "--k", "1", "--x", "1", "--variant", "modified"]
        )
        assert result.exit_code == 0
        # L_{1/2}(x) = sqrt(2 / (pi x)) (cosh x - 1)
        expected = math.sqrt(2 / math.pi) * (math.cosh(1.0) - 1)
        assert read_csv(result.stdout)["value"][0] == pytest.approx(expected, rel=1e-12)

    def test_order_out_of_domain(self, cli_runner):
        result = cli_runner.invoke(cli, ["eval", "--nu", "-2", "--k", "1", "--c", "1", "--x", "1"])
        assert result.exit_code == 2
        assert "nu > -3k/2" in result.output

    def test_plain_variant_needs_c(self, cli_runner):
        result = cli_runner.invoke(cli, ["eval", "--nu", "0", "--k", "1", "--x", "1"])
        assert result.exit_code == 2

    def test_modified_variant_rejects_c(self, cli_runner):
        args = ["eval", "--nu", "0", "--k", "1", "--c", "1", "--x", "1", "--variant", "modified"]
        assert cli_runner.invoke(cli, args).exit_code == 2

    def test_malformed_term_cap(self, cli_runner, monkeypatch):
        monkeypatch.setenv("KSTRUVE_MAX_TERMS", "abc")
        result = cli_runner.invoke(cli, H0_ARGS)
        assert result.exit_code == 2
        assert "KSTRUVE_MAX_TERMS" in result.output

    @pytest.mark.parametrize(
        "error",
        [QuadratureError("no convergence", 0.0, 1.0, 12), OverflowError("too big")],
    )
    def test_numerical_failure(self, cli_runner, mocker, error):
        mocker.patch("kstruve.cli.struve", side_effect=error)
        result = cli_runner.invoke(cli, H0_ARGS)
        assert result.exit_code == 3
        assert "Numerical failure" in result.output

    def test_unexpected_failure_is_numerical(self, cli_runner, mocker):
        mocker.patch("kstruve.cli.struve", side_effect=ZeroDivisionError("boom"))
        result = cli_runner.invoke(cli, H0_ARGS)
        assert result.exit_code == 3
        assert "ZeroDivisionError: boom" in result.output


class TestTable:
    def test_grid_is_inclusive(self):
        assert table_grid(0.0, 2.0, 1.0) == [0.0, 1.0, 2.0]
        assert len(table_grid(0.0, 2.0, 0.1)) == 21

    @pytest.mark.parametrize("start, end, step", [(0.0, 1.0, 0.0), (2.0, 1.0, 0.5), (0.0, 1e9, 1e-3)])
    def test_bad_grid(self, start, end, step):
        with pytest.raises(DomainError):
            table_grid(start, end, step)

    def test_three_rows(self, cli_runner):
        args = ["table", "--nu", "0", "--k", "1", "--c", "1", "--x-start", "0", "--x-end", "2", "--x-step", "1"]
        result = cli_runner.invoke(cli, args)
        assert result.exit_code == 0
        frame = read_csv(result.stdout)
        assert list(frame["x"]) == [0.0, 1.0, 2.0]
        assert frame["value"][0] == 0.0

    def test_single_half_order_row(self, cli_runner):
        args = ["table", "--nu", "0.5", "--k", "1", "--c", "1", "--x-start", "1", "--x-end", "1", "--x-step", "1"]
        frame = read_csv(cli_runner.invoke(cli, args).stdout)
        assert len(frame) == 1
        expected = math.sqrt(2 / math.pi) * (1 - math.cos(1.0))
        assert frame["value"][0] == pytest.approx(expected, rel=1e-12)

    def test_file_output_is_deterministic(self, cli_runner, tmp_path):
        args = ["table", "--nu", "1", "--k", "2", "--c", "-1", "--x-start", "0", "--x-end", "5", "--x-step", "0.25"]
        first, second = tmp_path / "first.csv", tmp_path / "second.csv"
        assert cli_runner.invoke(cli, [*args, "--out", str(first)]).exit_code == 0
        assert cli_runner.invoke(cli, [*args, "--out", str(second)]).exit_code == 0
        content = first.read_bytes()
        assert content == second.read_bytes()
        assert content.startswith(b"x,value,err_estimate,terms\n")
        assert b"\r\n" not in content

    def test_bad_step_exits_with_domain_code(self, cli_runner):
        args = ["table", "--nu", "0", "--k", "1", "--c", "1", "--x-start", "0", "--x-end", "1", "--x-step", "0"]
        assert cli_runner.invoke(cli, args).exit_code == 2

    def test_unwritable_output(self, cli_runner, tmp_path):
        out = tmp_path / "missing" / "table.csv"
        args = ["table", "--nu", "0", "--k", "1", "--c", "1", "--x-start", "0", "--x-end", "1", "--x-step", "1"]
        result = cli_runner.invoke(cli, [*args, "--out", str(out)])
        assert result.exit_code == 4
        assert not out.exists()


class TestVerify:
    def test_all_suites(self, cli_runner):
        result = cli_runner.invoke(cli, ["verify", "--suite", "all"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["suite"] == "all"
        assert report["passed"] is True
        suites = list(dict.fromkeys(check["name"].split(".")[0] for check in report["checks"]))
        assert suites == list(SUITE_ORDER)

    def test_turan_suite(self, cli_runner):
        result = cli_runner.invoke(cli, ["verify", "--suite", "turan"])
        assert result.exit_code == 0
        report = json.loads(result.stdout)
        assert report["suite"] == "turan"
        assert report["passed"] is True

    def test_recurrence_suite_at_loose_tolerance(self, cli_runner):
        result = cli_runner.invoke(cli, ["verify", "--suite", "recurrence", "--tol", "1e-9"])
        assert result.exit_code == 0

    def test_printed_constants_fail(self, cli_runner):
        result = cli_runner.invoke(cli, ["verify", "--suite", "integral", "--paper-literal"])
        assert result.exit_code == 1
        report = json.loads(result.stdout)
        assert report["passed"] is False
        assert report["checks"][0]["witness"] is not None

    def test_unknown_suite(self, cli_runner):
        assert cli_runner.invoke(cli, ["verify", "--suite", "bogus"]).exit_code == 2

    def test_negative_tolerance(self, cli_runner):
        result = cli_runner.invoke(cli, ["verify", "--suite", "turan", "--tol", "-1"])
        assert result.exit_code == 2

    def test_zero_jobs(self, cli_runner):
        assert cli_runner.invoke(cli, ["verify", "--jobs", "0"]).exit_code == 2

    def test_show_grid_for_every_suite(self, cli_runner):
        result = cli_runner.invoke(cli, ["verify", "--show-grid"])
        assert result.exit_code == 0
        assert tuple(json.loads(result.stdout)) == SUITE_ORDER

    def test_show_grid_for_one_suite(self, cli_runner):
        result = cli_runner.invoke(cli, ["verify", "--show-grid", "--suite", "turan"])
        assert list(json.loads(result.stdout)) == ["turan"]

    def test_report_to_file(self, cli_runner, tmp_path):
        out = tmp_path / "report.json"
        result = cli_runner.invoke(cli, ["verify", "--suite", "closedform", "--out", str(out)])
        assert result.exit_code == 0
        assert result.stdout == ""
        assert json.loads(out.read_text(encoding="utf-8"))["suite"] == "closedform"


def test_module_entry_point():
    completed = subprocess.run(
        [sys.executable, "-m", "kstruve", *H0_ARGS],
        capture_output=True,
        text=True,
        check=False,
    )
    assert completed.returncode == 0
    assert completed.stdout.startswith("x,value,err_estimate,terms\n")
