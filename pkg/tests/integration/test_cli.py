import json
import logging
from pathlib import Path

import pytest

from crumble.constants import ExitCode, Mode
from crumble.main import main
from crumble.models import CheckReport, MetricsReport
from tests.terms import DELTA_DELTA, DELTA_DELTA_I, DELTA_DELTA_XX, ERASE_INERT

_METRICS_KEYS = [
    "beta",
    "ift",
    "iff",
    "ife",
    "app_err",
    "sub_var",
    "sub_l",
    "sub_if",
    "sea",
    "principal",
    "term_size",
    "crumble_size",
    "exhausted",
]


@pytest.fixture()
def term_file(tmp_path):
    def write(source: str) -> str:
        path = tmp_path / "term.lam"
        path.write_text(source, encoding="utf8")
        return str(path)

    return write


def _metrics(output: str) -> dict:
    return json.loads(next(line for line in output.splitlines() if line.startswith("{")))


class TestTranslateCommand:
    @staticmethod
    def should_print_the_crumble(runner, term_file):
        result = runner.invoke(main, ["translate", term_file(DELTA_DELTA_I)])

        assert result.exit_code == ExitCode.OK.value, result.output
        assert result.output.rstrip() == r"(_1 (\z. (z)))[_1<-(\x. (x x)) (\x1. (x1 x1))]"

    @staticmethod
    def should_read_standard_input(runner):
        result = runner.invoke(main, ["translate", "--readback", "-"], input=r"(\x. x) true")

        assert result.exit_code == ExitCode.OK.value, result.output
        assert result.output.splitlines() == [r"((\x. (x)) true)", r"(\x. x) true"]

    @staticmethod
    def should_translate_open_terms_with_a_warning(runner, term_file, caplog):
        # GIVEN
        caplog.set_level(logging.WARNING, logger="crumble.commands.translate")
        path = term_file(r"(\x. x (x x)) y")

        # WHEN
        warned = runner.invoke(main, ["translate", path])
        quiet = runner.invoke(main, ["translate", "--open", path])

        # THEN
        assert warned.exit_code == quiet.exit_code == ExitCode.OK.value, warned.output
        assert r"((\x. (x _1)[_1<-x x]) y)" in warned.output.splitlines()
        assert [record.getMessage() for record in caplog.records] == [
            "Free variables y: the closed machine will not run this term, pass --open if intended."
        ]

    @staticmethod
    def should_keep_value_arguments_in_the_bite(runner, term_file):
        result = runner.invoke(main, ["translate", "--open", term_file(r"(\x. x (x x)) y")])

        assert result.exit_code == ExitCode.OK.value, result.output
        assert result.output.rstrip() == r"((\x. (x _1)[_1<-x x]) y)"

    @staticmethod
    def should_report_parse_errors(runner):
        result = runner.invoke(main, ["translate", "-"], input="(x")

        assert result.exit_code == ExitCode.USAGE_ERROR.value
        assert "Parse error: Unexpected end of input at line 1, column 3" in result.output


class TestRunCommand:
    @staticmethod
    def should_print_the_result_and_the_metrics(runner, term_file):
        # WHEN
        result = runner.invoke(main, ["run", "--mode", "closed", term_file(r"(\x. x) (\y. y)")])

        # THEN
        assert result.exit_code == ExitCode.OK.value, result.output
        assert result.output.splitlines()[0] == r"\y. y"
        metrics = _metrics(result.output)
        assert list(metrics) == _METRICS_KEYS
        assert metrics["beta"] == metrics["principal"] == 1
        assert metrics["term_size"] == 5
        assert metrics["exhausted"] is False

    @staticmethod
    def should_erase_an_inert_argument_in_open_mode(runner, term_file):
        result = runner.invoke(main, ["run", "--mode", "open", term_file(ERASE_INERT)])

        assert result.exit_code == ExitCode.OK.value, result.output
        assert result.output.splitlines()[0] == "v"
        assert _metrics(result.output)["principal"] == 2

    @staticmethod
    def should_write_the_trace_and_the_metrics(runner, term_file, tmp_path):
        # GIVEN
        trace_path, metrics_path = tmp_path / "trace.jsonl", tmp_path / "metrics.json"

        # WHEN
        result = runner.invoke(
            main,
            [
                "run",
                "--mode",
                "closed",
                "--fuel",
                "7",
                "--trace",
                str(trace_path),
                "--metrics",
                str(metrics_path),
                term_file(DELTA_DELTA),
            ],
        )

        # THEN
        assert result.exit_code == ExitCode.OK.value, result.output
        entries = [json.loads(line) for line in trace_path.read_text(encoding="utf8").splitlines()]
        assert [entry["label"] for entry in entries] == ["beta", "sea", "sub_l", "beta", "sub_var", "sea", "sub_l"]
        assert [entry["step"] for entry in entries] == list(range(7))
        assert all(entry["snapshot"] is None for entry in entries)
        metrics = MetricsReport.parse_file(metrics_path)
        assert metrics.exhausted
        assert metrics.principal == 2

    @staticmethod
    def should_add_snapshots_on_request(runner, term_file, tmp_path):
        trace_path = tmp_path / "trace.jsonl"

        runner.invoke(main, ["run", "--snapshots", "--trace", str(trace_path), term_file(r"(\x. x) true")])

        entries = [json.loads(line) for line in trace_path.read_text(encoding="utf8").splitlines()]
        assert entries[-1]["snapshot"].startswith("(true)")

    @staticmethod
    def should_stop_on_a_free_variable_in_closed_mode(runner, term_file):
        result = runner.invoke(main, ["run", "--mode", "closed", term_file(DELTA_DELTA_XX)])

        assert result.exit_code == ExitCode.OPEN_TERM.value

    @staticmethod
    def should_exhaust_the_fuel_in_open_mode(runner, term_file):
        result = runner.invoke(main, ["run", "--mode", "open", "--fuel", "50", term_file(DELTA_DELTA_XX)])

        assert result.exit_code == ExitCode.OK.value, result.output
        assert _metrics(result.output)["exhausted"] is True

    @staticmethod
    def should_reject_an_unknown_mode(runner, term_file):
        result = runner.invoke(main, ["run", "--mode", "lazy", term_file("true")])

        assert result.exit_code == ExitCode.USAGE_ERROR.value


class TestCheckCommand:
    @staticmethod
    @pytest.mark.parametrize("mode", [pytest.param(mode.value, id=mode.value) for mode in Mode])
    def should_find_no_issues(runner, mode):
        result = runner.invoke(
            main, ["check", "--mode", mode, "--count", "25", "--seed", "4", "--max-size", "18", "--fuel", "500"]
        )

        assert result.exit_code == ExitCode.OK.value, result.output
        assert "25 terms" in result.output
        assert "✔ No issues found." in result.output

    @staticmethod
    def should_write_the_reports(runner, tmp_path):
        report_path = tmp_path / "report.json"

        result = runner.invoke(
            main, ["check", "--count", "5", "--max-size", "10", "--fuel", "100", "--report", str(report_path)]
        )

        assert result.exit_code == ExitCode.OK.value, result.output
        reports = [CheckReport(**report) for report in json.loads(report_path.read_text(encoding="utf8"))]
        assert len(reports) == 5
        assert all(report.mode is Mode.CLOSED for report in reports)

    @staticmethod
    def should_exit_with_one_on_a_failed_check(runner, monkeypatch):
        # GIVEN
        failing = CheckReport(
            term="x",
            mode=Mode.CLOSED,
            reference_steps=1,
            principal_count=0,
            reference_exhausted=False,
            machine_exhausted=False,
            metrics=MetricsReport(),
        )
        monkeypatch.setattr("crumble.commands.check.check_many", lambda *args, **kwargs: [failing])

        # WHEN
        result = runner.invoke(main, ["check", "--count", "1"])

        # THEN
        assert result.exit_code == ExitCode.CHECK_FAILURE.value
        assert result.output.count("x: principal_count") == 1
        assert "✘ x: principal_count" in result.output
        assert "1 term(s) failed the cross-check." in result.output


class TestBenchCommand:
    @staticmethod
    def should_print_a_csv_table(runner):
        result = runner.invoke(main, ["bench", "--family", "kennedy", "--sizes", "1,2,4"])

        assert result.exit_code == ExitCode.OK.value, result.output
        lines = [line for line in result.output.splitlines() if line.startswith(("family,", "kennedy,"))]
        assert lines[0] == "family,n,principal,transitions,term_size,exhausted,wall_time"
        assert [line.split(",")[3] for line in lines[1:]] == ["7", "13", "25"]

    @staticmethod
    def should_write_the_csv_file_and_print_the_slope(runner, tmp_path):
        csv_path = tmp_path / "bench.csv"

        result = runner.invoke(main, ["bench", "--sizes", "8,16,32", "--csv", str(csv_path)])

        assert result.exit_code == ExitCode.OK.value, result.output
        assert "log-log slope" in result.output
        assert len(Path(csv_path).read_text(encoding="utf8").splitlines()) == 4

    @staticmethod
    @pytest.mark.parametrize(
        "sizes",
        [pytest.param("0,8", id="zero"), pytest.param("eight", id="not a number"), pytest.param("", id="empty")],
    )
    def should_reject_invalid_sizes(runner, sizes):
        result = runner.invoke(main, ["bench", "--sizes", sizes])

        assert result.exit_code == ExitCode.USAGE_ERROR.value


class TestRootCommand:
    @staticmethod
    def should_list_the_commands(runner):
        result = runner.invoke(main, ["-h"])

        assert result.exit_code == ExitCode.OK.value
        for command in ("translate", "run", "check", "bench"):
            assert command in result.output
        assert "Exit codes:" in result.output

    @staticmethod
    def should_fail_on_an_unknown_command(runner):
        result = runner.invoke(main, ["plot"])

        assert result.exit_code == ExitCode.USAGE_ERROR.value
