import json

import pytest

from wickcalc.command_orchestrator import CommandOptions, CommandOrchestrator, parse_amplitudes, parse_points
from wickcalc.errors import ParseError
from wickcalc.main import run_command

ABSTRACT_THREE = ["--stats", "fermi", "--model", "abstract", "A(1) A(2) A(3)"]


class TestExpand:
    def test_three_formal_fields(self):
        code, output = run_command(["expand", *ABSTRACT_THREE])
        assert code == 0
        assert output == (
            "+ N[A(1) A(2) A(3)]\n"
            "+ <1 2> N[A(3)]\n"
            "- <1 3> N[A(2)]\n"
            "+ <2 3> N[A(1)]\n"
        )

    def test_summary_line(self):
        code, output = run_command(["expand", "--summary", *ABSTRACT_THREE])
        assert code == 0
        assert output.splitlines()[0] == "# 4 terms (by number of contractions: 0: 1, 1: 3)"

    def test_json_is_deterministic(self):
        first = run_command(["expand", "--format", "json", *ABSTRACT_THREE])
        second = run_command(["expand", "--format", "json", *ABSTRACT_THREE])
        assert first == second
        payload = json.loads(first[1])
        assert payload["schema"] == 1
        assert payload["command"] == "expand"
        assert payload["n_terms"] == 4
        assert payload["terms"][2] == {"coefficient": {"re": -1.0, "im": 0.0}, "contractions": [[1, 3]],
                                       "normal": ["A(2)"]}

    def test_text_and_json_agree(self):
        _, text = run_command(["expand", *ABSTRACT_THREE])
        _, raw = run_command(["expand", "--format", "json", *ABSTRACT_THREE])
        terms = json.loads(raw)["terms"]
        for line, term in zip(text.splitlines(), terms):
            sign = "+" if term["coefficient"]["re"] > 0 else "-"
            pairs = [f"<{i} {j}>" for i, j in term["contractions"]]
            assert line == " ".join([sign, *pairs, "N[" + " ".join(term["normal"]) + "]"])

    def test_evaluate_with_undeclared_contraction(self):
        code, output = run_command(["expand", "--evaluate", "--model", "abstract", "A(1) A(2)"])
        assert code == 3
        assert output.startswith("error: no contraction declared")

    def test_oracle_check_on_expansion(self):
        code, output = run_command(["expand", "--model", "fermisea", "--modes", "2", "--filled", "1",
                                    "--oracle-check", "c(1) c+(2) c+(1)"])
        assert code == 0
        assert output.splitlines()[-1].startswith("# oracle deviation")


class TestVev:
    def test_odd_product_is_zero(self):
        assert run_command(["vev", *ABSTRACT_THREE]) == (0, "0\n")

    def test_bcs_anomalous_average(self):
        code, output = run_command(["vev", "--model", "bcs", "--pairs", "0.6:0.8", "a(1,up) a(1,down)"])
        assert code == 0
        assert float(output) == pytest.approx(-0.48)

    def test_oracle_check(self):
        code, output = run_command(["vev", "--model", "fermisea", "--modes", "2", "--filled", "1",
                                    "--oracle-check", "c+(1) c(1)"])
        assert code == 0
        value, note = output.splitlines()
        assert value == "1"
        assert note == "# oracle deviation 0.000e+00"

    def test_model_file(self, tmp_path):
        path = tmp_path / "sea.json"
        path.write_text(json.dumps({"model": "fermisea", "n_modes": 2, "n_filled": 1}))
        assert run_command(["vev", "--model-file", str(path), "c+(1) c(1)"]) == (0, "1\n")
        assert run_command(["vev", "--model-file", str(path), "c+(2) c(2)"]) == (0, "0\n")

    def test_json_describes_the_model(self):
        code, output = run_command(["vev", "--format", "json", "--model", "bcs", "--pairs", "0.6:0.8",
                                    "a(1,up) a(1,down)"])
        assert code == 0
        assert json.loads(output)["model"] == {
            "model": "bcs",
            "statistics": "fermi",
            "n_modes": 2,
            "n_quasi": 2,
            "pairs": [{"label": "1", "u": [0.6, 0.0], "v": [0.8, 0.0]}],
        }

    def test_json_describes_models_from_files(self, tmp_path):
        path = tmp_path / "sea.json"
        path.write_text(json.dumps({"model": "fermisea", "n_modes": 3, "n_filled": 2}))
        _, output = run_command(["vev", "--format", "json", "--model-file", str(path), "c+(1) c(1)"])
        assert json.loads(output)["model"] == {"model": "fermisea", "statistics": "fermi", "n_modes": 3,
                                               "n_quasi": 3, "n_filled": 2}
        _, output = run_command(["expand", "--format", "json", *ABSTRACT_THREE])
        assert json.loads(output)["model"] == {"model": "abstract", "statistics": "fermi", "n_modes": None,
                                               "declared_contractions": 0}

    def test_float_digits_from_environment(self, monkeypatch):
        monkeypatch.setenv("WICK_FLOAT_DIGITS", "3")
        code, output = run_command(["vev", "--model", "bcs", "--pairs", "0.6:0.8", "a(1,up) a(1,down)"])
        assert code == 0
        assert output == "-0.48\n"


class TestGreen:
    def test_vacuum_propagator(self):
        code, output = run_command(["green", "--modes", "1", "--xs", "1@1", "--ys", "1@0", "--format", "json"])
        assert code == 0
        payload = json.loads(output)
        assert payload["method"] == "determinant"
        assert complex(payload["value"]["re"], payload["value"]["im"]) == pytest.approx(-1j)

    def test_text_output(self):
        code, output = run_command(["green", "--modes", "1", "--xs", "1@1", "--ys", "1@0"])
        assert code == 0
        assert output == "G = -1i  (determinant)\n"


class TestCheck:
    def test_passes_on_vacuum(self):
        code, output = run_command(["check", "--modes", "4", "c(1) c+(2) c(3) c+(4)"])
        assert code == 0
        assert output.rstrip().endswith("OK")

    def test_failed_check_exit_code(self, monkeypatch):
        monkeypatch.setattr("wickcalc.command_orchestrator.check_operator_identity", lambda *args, **kwargs: 1.0)
        code, output = run_command(["check", "--modes", "2", "c(1) c+(2)"])
        assert code == 1
        assert output.rstrip().endswith("FAILED")


class TestErrors:
    def test_parse_error(self):
        code, output = run_command(["expand", "c(1)c(2)"])
        assert code == 2
        assert "line 1, column 5" in output

    def test_bcs_needs_pairs(self):
        code, output = run_command(["vev", "--model", "bcs", "a(1,up) a(1,down)"])
        assert code == 3
        assert "--pairs" in output

    @pytest.mark.parametrize("flags, flag", [
        (["--modes", "0"], "--modes"),
        (["--workers", "0"], "--workers"),
        (["--cutoff", "0"], "--cutoff"),
        (["--volume", "0"], "--volume"),
        (["--filled", "-1"], "--filled"),
        (["--density", "-0.5"], "--density"),
    ])
    def test_rejected_option_values(self, flags, flag):
        code, output = run_command(["check", *flags, "c(1) c+(1)"])
        assert code == 2
        assert output.startswith("error: invalid option")
        assert flag in output

    def test_rejected_option_values_as_json(self):
        code, output = run_command(["vev", "--format", "json", "--modes", "0", "c(1) c+(1)"])
        assert code == 2
        payload = json.loads(output)
        assert payload["exit_code"] == 2
        assert "--modes" in payload["error"]

    def test_unexpected_failure_is_not_a_failed_check(self, monkeypatch):
        def broken(*args, **kwargs):
            raise RuntimeError("boom")

        monkeypatch.setattr("wickcalc.command_orchestrator.vev", broken)
        code, output = run_command(["vev", *ABSTRACT_THREE])
        assert code == 4
        assert output == "error: boom\n"

    def test_unknown_subcommand(self):
        assert run_command(["reorder", "c(1)"])[0] == 2

    def test_json_error(self):
        code, output = run_command(["expand", "--format", "json", "c(0)"])
        assert code == 2
        payload = json.loads(output)
        assert payload["exit_code"] == 2
        assert "positive integer" in payload["error"]


class TestOrchestrator:
    def test_process_request_status(self):
        result = CommandOrchestrator().process_request("vev", "A(1) A(2) A(3)")
        assert result["status"] == "completed"
        assert result["success"] is True
        assert result["result"]["value"] == 0

    def test_failure_status(self):
        result = CommandOrchestrator().process_request("vev", "c(1)", CommandOptions(model="bcs"))
        assert result["status"] == "failed"
        assert result["exit_code"] == 3

    def test_parse_amplitudes(self):
        assert parse_amplitudes("0.6:0.8, 1:0") == [(0.6, 0.8), (1, 0)]
        assert parse_amplitudes("0:1i") == [(0, 1j)]
        with pytest.raises(ParseError):
            parse_amplitudes("0.6")

    def test_parse_points(self):
        assert parse_points("1@0.5, 2@0") == [(0, 0.5), (1, 0.0)]
        for text in ("0@1", "1", "x@1", "1@t"):
            with pytest.raises(ParseError):
                parse_points(text)
