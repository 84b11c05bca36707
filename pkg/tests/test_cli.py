import csv
import io
import json
import math
import os
import re
import subprocess
import sys
from pathlib import Path

import pytest

from trigft import cli
from trigft.reporting import canonical_json

GOLDEN = Path(__file__).parent / "golden"


def run(argv, capsys):
    code = cli.main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def run_process(args, env=None, cwd=None):
    full_env = dict(os.environ)
    full_env.pop(cli.CONFIG_ENV, None)
    full_env.update(env or {})
    return subprocess.run([sys.executable, "-m", "trigft", *args], capture_output=True, text=True,
                          env=full_env, cwd=cwd, timeout=600)


def without_wall_time(text):
    return re.sub(r'"wall_time": [^,\n]+', '"wall_time": 0', text)


class TestEval:
    def test_wallis(self, capsys):
        code, out, _ = run(["eval", "wallis", "--n", "4"], capsys)
        assert code == 0
        value = float(out.split("closed_form")[1].split()[0])
        assert value == pytest.approx(3 * math.pi / 8, rel=1e-15)

    def test_trig(self, capsys):
        code, out, _ = run(["eval", "trig", "--n", "0", "--a", "2", "--b", "1", "--json"], capsys)
        assert code == 0
        assert json.loads(out)["value"] == pytest.approx(math.pi / math.sqrt(3), rel=1e-15)

    def test_trig_general_order(self, capsys):
        code, out, _ = run(["eval", "trig", "--mu", "1.5+0.5i", "--a", "2", "--b", "1", "--with-oracles", "--json"],
                           capsys)
        assert code == 0
        rec = json.loads(out)
        assert rec["oracles"]["quadrature"]["rel_discrepancy"] <= 1e-9

    def test_ft_with_oracles(self, capsys):
        code, out, _ = run(["eval", "ft", "--dim", "3", "--a", "1", "--t", "1,0,0", "--with-oracles", "--json"],
                           capsys)
        assert code == 0
        rec = json.loads(out)
        assert rec["closed_form"] == pytest.approx(1 / (4 * math.pi**2), rel=1e-15)
        for name in ("sphere_reduction", "subordination"):
            assert rec["oracles"][name]["rel_discrepancy"] <= 1e-9
        mc = rec["oracles"]["monte_carlo"]
        assert mc["abs_discrepancy"] <= 4 * mc["std_error"]

    def test_global_flags_before_or_after(self, capsys):
        _, first, _ = run(["--json", "eval", "wallis", "--n", "3"], capsys)
        _, second, _ = run(["eval", "wallis", "--n", "3", "--json"], capsys)
        assert first == second
        assert json.loads(first)["value"] == pytest.approx(4 / 3)

    @pytest.mark.parametrize(
        "argv, fragment",
        [
            (["eval", "wallis", "--n", "-1"], "n"),
            (["eval", "trig", "--n", "0", "--a", "1", "--b", "2"], "a > b > 0"),
            (["eval", "trig", "--mu", "-1", "--a", "2", "--b", "1"], "Re mu > 0"),
            (["eval", "trig", "--mu", "zz", "--a", "2", "--b", "1"], "malformed order"),
            (["eval", "ft", "--dim", "0", "--a", "1", "--tnorm", "1"], "dim"),
            (["eval", "ft", "--dim", "2", "--a", "-1", "--tnorm", "1"], "a must be positive"),
            (["eval", "ft", "--dim", "2", "--a", "1", "--t", "1,0,0"], "components"),
            (["eval", "harmonic", "--f", "x1", "--t", "1,0,0"], "unit ball"),
            (["eval", "harmonic", "--f", "nope", "--t", "0,0,0"], "unknown boundary function"),
        ],
    )
    def test_invalid_parameters_exit_2(self, capsys, argv, fragment):
        code, _, err = run(argv, capsys)
        assert code == 2
        assert fragment in err

    def test_argparse_errors_exit_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["eval", "wallis"])
        assert info.value.code == 2


class TestTable:
    def test_trig_row_count(self, capsys):
        code, out, _ = run(["table", "trig", "--n", "0,1,2", "--a", "2", "--b", "0.5,1", "--format", "csv"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 6
        assert all(float(r["rel_discrepancy"]) <= 1e-10 for r in rows)

    def test_ft_discrepancies(self, capsys):
        code, out, _ = run(["table", "ft", "--dim", "1:5:5", "--a", "1", "--tnorm", "0,1"], capsys)
        assert code == 0
        rows = list(csv.DictReader(io.StringIO(out)))
        assert len(rows) == 10
        assert all(float(r["rel_discrepancy"]) <= 1e-9 for r in rows)

    def test_wallis_matches_closed_forms(self, capsys):
        code, out, _ = run(["table", "wallis", "--n", "0:20:21", "--format", "json"], capsys)
        assert code == 0
        rows = json.loads(out)
        assert [r["n"] for r in rows] == list(range(21))
        for r in rows:
            n = r["n"]
            # pi (n-1)!!/n!! for even n, 2 (n-1)!!/n!! for odd n
            num = math.prod(range(n - 1, 0, -2))
            den = math.prod(range(n, 0, -2))
            want = (math.pi if n % 2 == 0 else 2.0) * num / den
            assert r["closed_form"] == pytest.approx(want, rel=1e-15)
            assert r["rel_discrepancy"] <= 1e-11

    def test_json_and_csv_share_columns(self, capsys):
        args = ["table", "trig", "--n", "0,1", "--a", "2", "--b", "1"]
        _, out_csv, _ = run(args, capsys)
        _, out_json, _ = run(args + ["--format", "json"], capsys)
        header = out_csv.splitlines()[0].split(",")
        assert list(json.loads(out_json)[0]) == sorted(header)

    def test_output_file(self, capsys, tmp_path):
        target = tmp_path / "w.csv"
        code, out, _ = run(["table", "wallis", "--n", "0,1", "--output", str(target)], capsys)
        assert code == 0 and out == ""
        assert target.read_text().startswith("n,closed_form")

    @pytest.mark.parametrize("grid", ["0:3", "a,b", "1,,2", "0:3:0"])
    def test_malformed_grid_exit_2(self, capsys, grid):
        code, _, err = run(["table", "wallis", "--n", grid], capsys)
        assert code == 2
        assert "grid" in err

    def test_non_integer_order_grid(self, capsys):
        code, _, err = run(["table", "wallis", "--n", "0.5"], capsys)
        assert code == 2 and "integers" in err

    def test_unknown_oracle(self, capsys):
        code, _, err = run(["table", "trig", "--oracles", "magic"], capsys)
        assert code == 2 and "unknown oracle" in err

    def test_parse_grid(self):
        assert cli.parse_grid("0:1:3,5") == [0.0, 0.5, 1.0, 5.0]
        assert cli.parse_grid("1:5:5", integer=True) == [1, 2, 3, 4, 5]


class TestGoldens:
    @pytest.mark.parametrize(
        "name, argv",
        [
            ("table_trig_closed.csv", ["table", "trig", "--n", "0,1,2", "--a", "2", "--b", "0.5,1", "--oracles", ""]),
            ("table_wallis_beta.csv", ["table", "wallis", "--n", "0:20:21", "--oracles", "beta_form"]),
            ("eval_wallis_4.json", ["eval", "wallis", "--n", "4", "--json"]),
            ("table_ft_closed.json", ["table", "ft", "--dim", "1:5:5", "--a", "0.5,2", "--tnorm", "0,1,3",
                                      "--oracles", "", "--format", "json"]),
        ],
    )
    def test_byte_identical(self, capsys, name, argv):
        code, out, _ = run(argv, capsys)
        assert code == 0
        assert out == (GOLDEN / name).read_text()

    def test_trig_golden_values_are_right(self):
        rows = list(csv.DictReader((GOLDEN / "table_trig_closed.csv").open()))
        for r in rows:
            n, a, b = int(r["order"]), float(r["a"]), float(r["b"])
            gamma = {0: math.pi, 1: 2.0, 2: math.pi / 2}[n]
            assert float(r["closed_form"]) == pytest.approx(gamma / (a * a - b * b) ** ((n + 1) / 2), rel=1e-15)


class TestVerify:
    def test_special_passes(self, capsys):
        code, out, _ = run(["verify", "special", "--json"], capsys)
        assert code == 0
        rep = json.loads(out)
        assert rep["summary"]["total"] >= 60
        assert rep["summary"]["passed"] == rep["summary"]["total"]
        assert len(rep["cases"]) == rep["summary"]["total"]

    def test_json_round_trips(self, capsys):
        _, out, _ = run(["verify", "special", "--json"], capsys)
        assert canonical_json(json.loads(out)) == out

    def test_reports_deterministic(self, capsys):
        _, first, _ = run(["verify", "trig", "--json"], capsys)
        _, second, _ = run(["verify", "trig", "--json"], capsys)
        assert without_wall_time(first) == without_wall_time(second)

    def test_cases_sorted_and_pass_rule(self, capsys):
        _, out, _ = run(["verify", "fourier", "--json"], capsys)
        rep = json.loads(out)
        ids = [c["case_id"] for c in rep["cases"]]
        assert ids == sorted(ids)
        for c in rep["cases"]:
            rule = c["rel_discrepancy"] <= c["tolerance"] or c["abs_discrepancy"] <= c["abs_floor"]
            assert c["passed"] == rule
            if "monte_carlo" not in c["case_id"]:
                assert c["rel_discrepancy"] <= 1e-9 or c["abs_discrepancy"] <= c["abs_floor"]

    def test_failure_exit_1(self, capsys):
        code, out, _ = run(["verify", "special", "--tol", "1e-300"], capsys)
        assert code == 1
        assert "failed" in out.splitlines()[-1]

    def test_text_summary(self, capsys):
        code, out, _ = run(["verify", "special"], capsys)
        assert code == 0
        assert re.search(r"special: (\d+)/\1 passed, 0 failed, 0 errors", out)

    def test_unknown_suite(self, capsys):
        with pytest.raises(SystemExit) as info:
            cli.main(["verify", "nothing"])
        assert info.value.code == 2


class TestConfig:
    def test_precedence(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"seed": 5, "mc_samples": 1000}))
        argv = ["eval", "ft", "--dim", "2", "--a", "1", "--tnorm", "0.5", "--with-oracles", "--json"]
        _, out, _ = run(argv + ["--config", str(path)], capsys)
        mc = json.loads(out)["oracles"]["monte_carlo"]
        assert (mc["seed"], mc["n_samples"]) == (5, 1000)
        _, out, _ = run(argv + ["--config", str(path), "--seed", "7"], capsys)
        assert json.loads(out)["oracles"]["monte_carlo"]["seed"] == 7
        _, out, _ = run(argv[:-1] + ["--json"], capsys)
        assert json.loads(out)["oracles"]["monte_carlo"]["seed"] == 0

    def test_grid_defaults_from_config(self, capsys, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"grids": {"wallis": {"n": "2,3"}}}))
        _, out, _ = run(["table", "wallis", "--config", str(path)], capsys)
        assert len(out.splitlines()) == 3

    def test_environment_variable(self, tmp_path):
        path = tmp_path / "cfg.json"
        path.write_text(json.dumps({"grids": {"wallis": {"n": "7"}}}))
        res = run_process(["table", "wallis"], env={cli.CONFIG_ENV: str(path)})
        assert res.returncode == 0
        assert res.stdout.splitlines()[1].startswith("7,")

    @pytest.mark.parametrize("content", ['{"unknown": 1}', "not json", "[1, 2]", '{"tolerances": {"bogus": 1}}'])
    def test_bad_config_exit_2(self, capsys, tmp_path, content):
        path = tmp_path / "cfg.json"
        path.write_text(content)
        code, _, err = run(["eval", "wallis", "--n", "1", "--config", str(path)], capsys)
        assert code == 2 and ("config" in err or "tolerance" in err)

    def test_missing_config_exit_2(self, capsys, tmp_path):
        code, _, _ = run(["eval", "wallis", "--n", "1", "--config", str(tmp_path / "none.json")], capsys)
        assert code == 2


def test_module_entry_point():
    res = run_process(["eval", "wallis", "--n", "2"])
    assert res.returncode == 0
    assert "1.5707963267948966" in res.stdout
    res = run_process(["eval", "trig", "--n", "0", "--a", "1", "--b", "1"])
    assert res.returncode == 2
    assert "a > b > 0" in res.stderr


def test_help_lists_subcommands():
    res = run_process(["--help"])
    assert res.returncode == 0
    for word in ("eval", "table", "verify"):
        assert word in res.stdout
