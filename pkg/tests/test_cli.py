"""Command-line behaviour: outputs, exit codes, config resolution and report round trips."""

import json
import math
import subprocess
import sys

import pytest

from ptrans import cli, harness
from ptrans.errors import DomainError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def rows(out):
    return json.loads(out)["rows"]


class TestTransform:
    def test_pnu2_bessel_example(self, capsys):
        # at order 1 this reduces to K_0(1)
        code, out, _ = run(capsys, "transform", "p_nu2", "--fn", "besselj", "--mu", "0", "--z", "1",
                           "--nu", "1", "--y", "1", "--format", "json")
        assert code == cli.EXIT_PASS
        [row] = rows(out)
        assert row["converged"] and abs(row["value"] - 0.42102443824070834) <= 1e-9

    def test_l2_of_one(self, capsys):
        code, out, _ = run(capsys, "transform", "l2", "--fn", "one", "--y", "2", "--format", "json")
        assert code == 0 and abs(rows(out)[0]["value"] - 0.125) <= 1e-12

    def test_product_of_orders_and_points(self, capsys):
        code, out, _ = run(capsys, "transform", "p_nu2", "--fn", "gauss", "--nu", "1", "--nu", "2",
                           "--y", "0.5", "--y", "1", "--y", "2", "--format", "json")
        assert code == 0
        assert [(r["order"], r["point"]) for r in rows(out)] == [
            (1.0, 0.5), (1.0, 1.0), (1.0, 2.0), (2.0, 0.5), (2.0, 1.0), (2.0, 2.0)]

    def test_unknown_function_lists_catalog(self, capsys):
        code, _, err = run(capsys, "transform", "l2", "--fn", "nope", "--y", "1")
        assert code == cli.EXIT_USAGE
        assert "gauss" in err and "besselj" in err

    def test_unknown_transform(self, capsys):
        code, _, err = run(capsys, "transform", "mellin", "--fn", "gauss", "--y", "1")
        assert code == cli.EXIT_USAGE and "l2" in err

    def test_missing_order(self, capsys):
        assert run(capsys, "transform", "p_nu2", "--fn", "gauss", "--y", "1")[0] == cli.EXIT_USAGE

    def test_order_domain(self, capsys):
        assert run(capsys, "transform", "p_nu2", "--fn", "gauss", "--nu", "-1", "--y", "1")[0] == cli.EXIT_USAGE

    def test_divergent_integral_is_nonconvergence(self, capsys):
        code, out, err = run(capsys, "transform", "p_nu2", "--fn", "one", "--nu", "0.75", "--y", "1",
                             "--format", "json")
        assert code == cli.EXIT_NONCONVERGENCE
        assert not rows(out)[0]["converged"] and "not converged" in err

    def test_table_and_csv(self, capsys):
        _, table, _ = run(capsys, "transform", "laplace", "--fn", "gauss", "--y", "1")
        assert table.splitlines()[0].split()[:3] == ["transform", "function", "order"]
        _, csv_text, _ = run(capsys, "transform", "laplace", "--fn", "gauss", "--y", "1", "--format", "csv")
        assert csv_text.splitlines()[0] == ",".join(cli.TRANSFORM_FIELDS)

    def test_json_round_trip(self, capsys):
        _, out, _ = run(capsys, "transform", "widder", "--fn", "besselj", "--mu", "0", "--z", "1",
                        "--y", "1", "--format", "json")
        report = cli.TransformReport.from_dict(json.loads(out))
        assert json.loads(report.to_json()) == json.loads(out)
        assert abs(report.rows[0].value - 0.42102443824070834) <= 1e-9

    def test_no_timestamp_is_byte_stable(self, capsys):
        argv = ("transform", "glasser", "--fn", "gauss", "--y", "1", "--y", "3", "--format", "json",
                "--no-timestamp")
        first = run(capsys, *argv)[1]
        second = run(capsys, *argv)[1]
        assert first == second
        assert json.loads(first)["timestamp"] is None

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "report.csv"
        code, out, _ = run(capsys, "transform", "l2", "--fn", "gauss", "--y", "1", "--format", "csv",
                           "--output", str(target))
        assert code == 0 and out == ""
        assert target.read_text().startswith("transform,")


class TestIdentity:
    def test_single_entry(self, capsys):
        code, out, _ = run(capsys, "identity", "--id", "WIDDER-BESSELJ")
        assert code == 0 and "1/1 grids pass" in out

    def test_ci_verdicts_shown(self, capsys):
        code, out, _ = run(capsys, "identity", "--id", "CI-1")
        assert code == 0 and "rederived" in out

    def test_json_summary_on_stderr(self, capsys):
        code, out, err = run(capsys, "identity", "--id", "EX-GAUSS-TRICOMI", "--format", "json")
        data = json.loads(out)
        assert code == 0 and "grids pass" in err
        assert {e["id"] for e in data["entries"]} == {"EX-GAUSS-TRICOMI"}

    def test_csv_one_row_per_entry(self, capsys):
        _, out, _ = run(capsys, "identity", "--id", "WIDDER-BESSELJ", "--id", "CK-1", "--format", "csv")
        lines = out.splitlines()
        assert lines[0] == ",".join(harness.ENTRY_FIELDS) and len(lines) == 3

    def test_mismatch_exit_code(self, capsys):
        code, _, err = run(capsys, "identity", "--id", "WIDDER-BESSELJ", "--tol-smooth", "1e-300",
                           "--tol-abs", "0")
        assert code == cli.EXIT_FAIL and "FAIL WIDDER-BESSELJ" in err

    def test_unknown_id(self, capsys):
        assert run(capsys, "identity", "--id", "NOPE")[0] == cli.EXIT_USAGE

    def test_requires_selection(self, capsys):
        code, _, err = run(capsys, "identity")
        assert code == cli.EXIT_USAGE and "--all" in err

    def test_selection_from_config(self, capsys, tmp_path):
        cfg = tmp_path / "ids.cfg"
        cfg.write_text("select.identities = CK-1\n")
        code, out, _ = run(capsys, "identity", "--config", str(cfg))
        assert code == 0 and "1/1 grids pass" in out


class TestParseval:
    def test_symmetric_pair(self, capsys):
        code, out, _ = run(capsys, "parseval", "--relation", "T1-3", "--f", "gauss", "--g", "gauss",
                           "--nu", "1.5", "--format", "json")
        [report] = json.loads(out)["parseval"]
        assert code == 0 and report["rel_gap"] == 0.0

    def test_out_of_hypothesis_is_skipped(self, capsys):
        code, out, err = run(capsys, "parseval", "--relation", "T1-1", "--f", "gauss", "--g", "besselj",
                             "--g-param", "mu=0", "--g-param", "z=1", "--nu", "2")
        assert code == 0 and "0/0 relations pass (1 skipped)" in out

    def test_moment_relation(self, capsys):
        code, out, _ = run(capsys, "parseval", "--relation", "CALI-3", "--g", "power_gauss",
                           "--g-param", "mu=1", "--g-param", "a=1", "--mu", "0.5", "--nu", "1",
                           "--format", "json")
        [report] = json.loads(out)["parseval"]
        assert code == 0 and abs(report["side_a"]["value"] - math.pi ** 1.5 / 8) <= 1e-6

    def test_moment_needs_mu(self, capsys):
        assert run(capsys, "parseval", "--relation", "CALI-1", "--g", "gauss", "--nu", "1")[0] == cli.EXIT_USAGE

    def test_bad_param_syntax(self, capsys):
        assert run(capsys, "parseval", "--f", "gauss", "--g", "gauss", "--g-param", "mu")[0] == cli.EXIT_USAGE

    def test_suite_round_trip(self, capsys):
        _, out, _ = run(capsys, "parseval", "--relation", "GLASSER-PG", "--f", "gauss", "--g", "gauss",
                        "--format", "json")
        report = harness.SuiteReport.from_dict(json.loads(out))
        assert json.loads(report.to_json()) == json.loads(out)


class TestList:
    @pytest.mark.parametrize("what,needle", [("transforms", "p_nu2"), ("functions", "power_gauss"),
                                             ("identities", "CI-2"), ("relations", "GLASSER-PG")])
    def test_listing(self, capsys, what, needle):
        code, out, _ = run(capsys, "list", what)
        assert code == 0 and needle in out

    def test_json_listing(self, capsys):
        _, out, _ = run(capsys, "list", "identities", "--format", "json")
        assert len(json.loads(out)) == 25


class TestConfig:
    def test_parse(self):
        parsed = cli.parse_config_text("# comment\nquad.rel_tol = 1e-8\noutput.format = json\n"
                                       "select.nus = 1, 1.5\n")
        assert parsed == {"rel_tol": 1e-8, "format": "json", "nus": (1.0, 1.5)}

    @pytest.mark.parametrize("text", ["quad.rel_tol", "quad.nope = 1", "output.format = xml",
                                      "quad.max_evals = many"])
    def test_rejects(self, text):
        with pytest.raises(DomainError):
            cli.parse_config_text(text)

    def test_precedence(self, tmp_path):
        env_file = tmp_path / "env.cfg"
        env_file.write_text("tol.smooth = 1e-3\noutput.format = csv\n")
        flag_file = tmp_path / "flag.cfg"
        flag_file.write_text("tol.smooth = 1e-4\n")
        parser = cli.build_parser()
        args = parser.parse_args(["list", "relations"])
        assert cli.resolve_run_config(args, {cli.CONFIG_ENV: str(env_file)}).tol_smooth == 1e-3
        args = parser.parse_args(["list", "relations", "--config", str(flag_file)])
        resolved = cli.resolve_run_config(args, {cli.CONFIG_ENV: str(env_file)})
        assert resolved.tol_smooth == 1e-4 and resolved.format == "table"
        args = parser.parse_args(["list", "relations", "--config", str(flag_file), "--tol-smooth", "1e-5"])
        assert cli.resolve_run_config(args, {}).tol_smooth == 1e-5

    def test_config_applies_to_run(self, capsys, tmp_path, monkeypatch):
        cfg = tmp_path / "run.cfg"
        cfg.write_text("output.format = json\n")
        monkeypatch.setenv(cli.CONFIG_ENV, str(cfg))
        _, out, _ = run(capsys, "transform", "l2", "--fn", "gauss", "--y", "1")
        assert rows(out)[0]["transform"] == "l2"

    def test_missing_file(self, capsys, tmp_path):
        code, _, err = run(capsys, "list", "relations", "--config", str(tmp_path / "absent.cfg"))
        assert code == cli.EXIT_USAGE and "cannot read config" in err

    def test_invalid_quadrature_setting(self, capsys):
        assert run(capsys, "transform", "l2", "--fn", "gauss", "--y", "1", "--rel-tol", "-1")[0] == cli.EXIT_USAGE


def test_exit_code_rule():
    assert cli._exit_code([]) == 0
    assert cli._exit_code(["TailError: slow decay", "EvalError: nan"]) == 3
    assert cli._exit_code(["TailError: slow decay", "rel_gap too large"]) == 1


def test_module_entry_point():
    done = subprocess.run([sys.executable, "-m", "ptrans", "list", "relations"], capture_output=True, text=True)
    assert done.returncode == 0 and "T1-1" in done.stdout
