import io
import json

import pytest

from cli import SUITE_ORDER, load_config, run_command, run_suite, suite_checks
from exact_arith.errors import UnknownSuite
from forms import PoleForm
from main import TopoRecApp, _config_path
from recursion import compute_omega


def run(argv, config=None):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, config, out, err)
    return code, out.getvalue().strip(), err.getvalue().strip()


class TestCommands:
    def test_fg_of_airy_is_zero(self, config, airy_spec_file):
        code, out, _ = run(["fg", "--curve", str(airy_spec_file), "--g", "2"], config)
        assert (code, out) == (0, "0")

    def test_fg_one_prints_log_argument(self, config):
        code, out, _ = run(["fg", "--family", "kontsevich", "--param", "times=1", "--g", "1"], config)
        assert (code, out) == (0, "1/2")

    def test_omega_json(self, config, airy_spec_file, airy):
        code, out, _ = run(["omega", "--curve", str(airy_spec_file), "--g", "1", "--n", "1",
                            "--format", "json"], config)
        assert code == 0
        assert PoleForm.from_doc(out) == compute_omega(airy, 1, 1)

    def test_omega_pretty_unstable(self, config):
        code, out, _ = run(["omega", "--family", "airy", "--g", "0", "--n", "2"], config)
        assert code == 0
        assert out.startswith("omega_2^(0) =")

    def test_counts(self, config):
        code, out, _ = run(["counts", "--family", "quadrangulation", "--order", "4"], config)
        assert (code, out) == (0, "[2, 9, 54, 378]")

    def test_diagram_count(self, config):
        code, out, _ = run(["diagrams", "--g", "2", "--k", "0", "--count-only"], config)
        assert (code, out) == (0, "5")
        _, out, _ = run(["diagrams", "--g", "2", "--k", "0", "--rules", "any-edge", "--count-only",
                         "--format", "json"], config)
        assert json.loads(out) == {"count": 15}

    def test_diagram_weights(self, config):
        code, out, _ = run(["diagrams", "--g", "0", "--k", "2", "--weights", "--family", "airy",
                            "--format", "json"], config)
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 2
        assert "weight_sum" in doc

    def test_curve_show(self, config):
        code, out, _ = run(["curve-show", "--family", "airy", "--format", "json"], config)
        assert code == 0
        doc = json.loads(out)
        assert doc["family"] == "airy"
        assert [bp["kind"] for bp in doc["branchpoints"]] == ["regular"]

    def test_kernel_json(self, config):
        code, out, _ = run(["kernel", "--family", "airy", "--order", "0", "--format", "json"], config)
        assert code == 0
        assert json.loads(out)["prime_form"] == "(z1 - z2)/sqrt(dz1*dz2)"


class TestErrors:
    @pytest.mark.parametrize("argv", [
        [],
        ["fg", "--g", "2"],
        ["fg", "--family", "airy", "--g", "0"],
        ["diagrams", "--g", "1", "--k", "0", "--count-only", "--weights"],
        ["counts", "--family", "airy", "--order", "3"],
        ["omega", "--family", "airy", "--g", "1", "--n", "1", "--jobs", "0"],
        ["omega", "--family", "airy", "--g", "1"],
        ["frobnicate"],
    ])
    def test_usage_errors_exit_two(self, config, argv):
        code, out, err = run(argv, config)
        assert code == 2
        assert out == ""
        assert json.loads(err)["error"]["code"] == "USAGE_ERROR"

    def test_missing_curve_file(self, config, tmp_path):
        code, _, err = run(["fg", "--curve", str(tmp_path / "nope.json"), "--g", "2"], config)
        assert code == 2
        assert json.loads(err)["error"]["code"] == "FILE_NOT_FOUND"

    def test_domain_error_is_json(self, config):
        code, _, err = run(["fg", "--family", "quadrangulation", "--param", "t4=1",
                            "--param", "gamma=1/2", "--g", "1"], config)
        assert code == 1
        error = json.loads(err)["error"]
        assert error["code"] == "MULTI_BRANCHPOINT"
        assert error["timestamp"].endswith("Z")

    def test_unknown_family(self, config):
        code, _, err = run(["curve-show", "--family", "hurwitz"], config)
        assert code == 1
        assert json.loads(err)["error"]["code"] == "UNKNOWN_FAMILY"

    def test_bad_param(self, config):
        code, _, _ = run(["curve-show", "--family", "airy", "--param", "colour"], config)
        assert code == 2


class TestSuites:
    def test_unknown_suite(self, config):
        with pytest.raises(UnknownSuite):
            run_suite("bogus", config)
        code, _, err = run(["verify", "--suite", "bogus"], config)
        assert code == 1
        assert json.loads(err)["error"]["code"] == "UNKNOWN_SUITE"

    @pytest.mark.parametrize("suite", ["kontsevich", "maps", "plancherel", "diagrams"])
    def test_suite_passes(self, config, suite):
        report = run_suite(suite, config)
        assert report.passed, [c for c in report.checks if c.status == "fail"]
        assert report.exit_code == 0

    @pytest.mark.parametrize("check_id", [
        "invariants/transform-coverage",
        "invariants/joukowski-mobius-1-0-1-1",
        "invariants/airy-dilaton",
        "invariants/kontsevich-dilaton",
    ])
    def test_invariant_check(self, config, check_id):
        checks = {c.id: c for c in suite_checks("invariants", config)}
        expected, got = checks[check_id].run(config)
        assert expected == got == "[]"

    def test_parallel_run_matches_serial(self, config):
        serial = run_suite("diagrams", config, jobs=1)
        parallel = run_suite("diagrams", config, jobs=3)
        assert [(c.id, c.status) for c in serial.checks] == [(c.id, c.status) for c in parallel.checks]

    def test_timings(self, config):
        report = run_suite("diagrams", config, timings=True)
        assert all(c.elapsed is not None for c in report.checks)

    def test_check_ids_are_unique(self, config):
        ids = [c.id for c in suite_checks("all", config)]
        assert len(ids) == len(set(ids))
        assert len(ids) > len(SUITE_ORDER)

    def test_verify_command(self, config):
        code, out, _ = run(["verify", "--suite", "diagrams", "--format", "json"], config)
        assert code == 0
        assert json.loads(out)["suite"] == "diagrams"


class TestSettings:
    def test_missing_file_gives_defaults(self, tmp_path, config):
        assert load_config(tmp_path / "missing.yaml") == config

    def test_file_overrides_defaults(self, tmp_path):
        path = tmp_path / "config.yaml"
        path.write_text("jobs: 3\nconvention: paper9\n")
        loaded = load_config(path)
        assert loaded["jobs"] == 3
        assert loaded["convention"] == "paper9"
        assert loaded["output_format"] == "pretty"

    def test_non_mapping_is_ignored(self, tmp_path, config):
        path = tmp_path / "config.yaml"
        path.write_text("- 1\n- 2\n")
        assert load_config(path) == config

    def test_convention_from_config(self, config, airy_spec_file, airy):
        config["convention"] = "paper9"
        _, out, _ = run(["omega", "--curve", str(airy_spec_file), "--g", "0", "--n", "3",
                         "--format", "json"], config)
        assert PoleForm.from_doc(out) == compute_omega(airy, 0, 3).convention("paper9")


class TestApp:
    def test_config_path_lookup(self):
        assert _config_path(["fg", "--config", "a.yaml"]) == "a.yaml"
        assert _config_path(["--config=b.yaml", "fg"]) == "b.yaml"
        assert _config_path(["fg"]) == "config.yaml"

    def test_app_runs_a_command(self, tmp_path, capsys):
        app = TopoRecApp(str(tmp_path / "missing.yaml"))
        assert app.config["jobs"] == 1
        assert app.run(["diagrams", "--g", "1", "--k", "0", "--count-only"]) == 0
        assert capsys.readouterr().out.strip() == "1"
