"""File formats and the command-line interface."""

import json

import numpy as np
import pytest

from polykern.cli import get_test_function, main
from polykern.errors import CsvParseError
from polykern.io import format_float, read_points, read_table, write_points, write_table
from polykern.kernels import PointSet
from polykern.unisolvency import generate_nodes


def run_cli(*argv):
    return main([str(a) for a in argv])


class TestIO:
    def test_float_round_trip_bit_exact(self, tmp_path):
        rng = np.random.default_rng(1)
        pts = PointSet(np.concatenate([rng.uniform(-1, 1, 20), [1e-300, 0.1 + 0.2]])[:, None])
        path = tmp_path / "pts.csv"
        write_points(path, pts)
        back = read_points(path)
        assert np.array_equal(back.coords, pts.coords)

    def test_header_round_trip(self, tmp_path):
        path = tmp_path / "t.csv"
        write_table(path, [[1.0, 2.0]], columns=["u", "v"], header=True)
        data, cols = read_table(path, header=True)
        assert cols == ["u", "v"]
        assert data.tolist() == [[1.0, 2.0]]

    def test_comments_skipped(self, tmp_path):
        path = tmp_path / "c.csv"
        path.write_text("# a comment\n0.5\n\n# more\n1.5\n")
        data, _ = read_table(path)
        assert data.tolist() == [[0.5], [1.5]]

    def test_parse_error_carries_line_number(self, tmp_path):
        path = tmp_path / "bad.csv"
        path.write_text("# header\n0.5\nnot-a-number\n")
        with pytest.raises(CsvParseError) as err:
            read_table(path)
        assert err.value.line_no == 3

    def test_ragged_rows_rejected(self, tmp_path):
        path = tmp_path / "ragged.csv"
        path.write_text("1.0,2.0\n3.0\n")
        with pytest.raises(CsvParseError) as err:
            read_table(path)
        assert err.value.line_no == 2

    def test_config_embedded_in_output(self, tmp_path):
        path = tmp_path / "o.csv"
        write_table(path, [[1.0]], config={"alpha": 2, "beta": "x"})
        text = path.read_text()
        assert "# alpha = 2" in text and "# beta = x" in text and "# version =" in text

    def test_format_float_is_17_digits(self):
        assert format_float(1 / 3) == "0.33333333333333331"
        assert float(format_float(np.pi)) == np.pi


class TestFunctionCatalog:
    def test_builtins(self):
        x = np.array([0.2, -0.4])
        assert np.allclose(get_test_function("cos10x")(x), np.cos(10 * x))
        assert np.allclose(get_test_function("runge")(x), 1 / (1 + 25 * x**2))
        assert np.allclose(get_test_function("absx")(x), np.abs(x))

    def test_monomials_by_name(self):
        x = np.array([0.5, 2.0])
        assert np.allclose(get_test_function("monomial:3")(x), x**3)

    def test_unknown_name(self):
        with pytest.raises(ValueError):
            get_test_function("sinx")


class TestInterpolateCommand:
    def _write_problem(self, tmp_path, n=3, p=2, func=lambda x: x**2):
        nodes = generate_nodes("chebyshev", n, (-1, 1))
        points = tmp_path / "points.csv"
        values = tmp_path / "values.csv"
        evals = tmp_path / "eval.csv"
        write_points(points, nodes)
        write_table(values, [[func(x)] for x in nodes.coords[:, 0]])
        grid = np.linspace(-1, 1, 101)
        write_table(evals, [[x] for x in grid])
        return points, values, evals, grid

    def test_quadratic_exactness(self, tmp_path):
        points, values, evals, grid = self._write_problem(tmp_path)
        out = tmp_path / "result.csv"
        code = run_cli("interpolate", "--points", points, "--values", values,
                       "--eval", evals, "--a", 1, "--p", 2, "--method", "stable",
                       "--out", out)
        assert code == 0
        data, _ = read_table(out)
        assert np.max(np.abs(data[:, 1] - grid**2)) <= 1e-10

    def test_direct_reports_condition_estimate(self, tmp_path):
        nodes = generate_nodes("chebyshev", 30, (-1, 1))
        points = tmp_path / "p.csv"
        values = tmp_path / "v.csv"
        evals = tmp_path / "e.csv"
        write_points(points, nodes)
        write_table(values, [[np.cos(10 * x)] for x in nodes.coords[:, 0]])
        write_table(evals, [[0.0]])
        out = tmp_path / "r.csv"
        code = run_cli("interpolate", "--points", points, "--values", values,
                       "--eval", evals, "--a", 5, "--p", 35, "--method", "direct",
                       "--out", out)
        assert code == 0
        line = [l for l in out.read_text().splitlines() if "condition_estimate" in l]
        assert line and float(line[0].split("=")[1]) > 1e12

    def test_empty_eval_gives_header_only(self, tmp_path):
        points, values, _, _ = self._write_problem(tmp_path)
        evals = tmp_path / "empty.csv"
        evals.write_text("# no rows\n")
        out = tmp_path / "r.csv"
        code = run_cli("interpolate", "--points", points, "--values", values,
                       "--eval", evals, "--a", 1, "--p", 2, "--out", out)
        assert code == 0
        body = [l for l in out.read_text().splitlines() if not l.startswith("#")]
        assert body == []

    def test_numerical_failure_exit_code(self, tmp_path):
        points = tmp_path / "p.csv"
        # two points in the one-dimensional homogeneous space
        points.write_text("0.5\n0.8\n")
        values = tmp_path / "v.csv"
        values.write_text("1.0\n2.0\n")
        evals = tmp_path / "e.csv"
        evals.write_text("0.0\n")
        code = run_cli("interpolate", "--points", points, "--values", values,
                       "--eval", evals, "--a", 0, "--p", 3, "--out", tmp_path / "r.csv")
        assert code == 3

    def test_parse_failure_exit_code(self, tmp_path):
        points = tmp_path / "p.csv"
        points.write_text("0.5\nbroken\n")
        values = tmp_path / "v.csv"
        values.write_text("1.0\n2.0\n")
        code = run_cli("interpolate", "--points", points, "--values", values,
                       "--eval", values, "--a", 1, "--p", 2, "--out", tmp_path / "r.csv")
        assert code == 2

    def test_missing_file_exit_code(self, tmp_path):
        code = run_cli("interpolate", "--points", tmp_path / "nope.csv",
                       "--values", tmp_path / "nope.csv", "--eval", tmp_path / "nope.csv",
                       "--a", 1, "--p", 2, "--out", tmp_path / "r.csv")
        assert code == 4

    def test_json_output(self, tmp_path):
        points, values, evals, _ = self._write_problem(tmp_path)
        out = tmp_path / "r.json"
        code = run_cli("interpolate", "--points", points, "--values", values,
                       "--eval", evals, "--a", 1, "--p", 2, "--format", "json", "--out", out)
        assert code == 0
        payload = json.loads(out.read_text())
        assert payload["config"]["command"] == "interpolate"
        assert payload["version"]
        assert len(payload["rows"]) == 101


class TestSweepCommands:
    def test_convergence_small_sweep(self, tmp_path):
        out = tmp_path / "conv.csv"
        code = run_cli("convergence", "--n-min", 5, "--n-max", 8, "--p-offsets", "0,2",
                       "--a", "5", "--grid", 200, "--out", out)
        assert code == 0
        rows = [l.split(",") for l in out.read_text().splitlines() if l and not l.startswith("#")]
        assert len(rows) == 4 * 2 * 2  # N in 5..8, two offsets, two methods
        assert all(r[6] == "ok" for r in rows)
        stable_errors = {(int(r[0]), int(r[1])): float(r[4]) for r in rows if r[3] == "stable"}
        assert stable_errors[(8, 7)] < stable_errors[(5, 4)]

    def test_convergence_deterministic_and_parallel_identical(self, tmp_path):
        a = tmp_path / "a.csv"
        b = tmp_path / "b.csv"
        c = tmp_path / "c.csv"
        args = ["convergence", "--n-min", 5, "--n-max", 7, "--p-offsets", "0",
                "--a", "5", "--grid", 100, "--seed", 1]
        assert run_cli(*args, "--out", a) == 0
        assert run_cli(*args, "--out", b) == 0
        assert run_cli(*args, "--out", c, "--jobs", 2) == 0
        assert a.read_bytes() == b.read_bytes() == c.read_bytes()

    def test_lebesgue_sweep(self, tmp_path):
        out = tmp_path / "leb.csv"
        code = run_cli("lebesgue", "--n-min", 5, "--n-max", 6, "--p-offsets", "0",
                       "--a", "5,10", "--grid", 200, "--out", out)
        assert code == 0
        rows = [l.split(",") for l in out.read_text().splitlines() if l and not l.startswith("#")]
        assert len(rows) == 4
        assert all(float(r[4]) >= 1.0 for r in rows)

    def test_lagrange_defaults_reproduce_cardinal_functions(self, tmp_path):
        out = tmp_path / "lag.csv"
        code = run_cli("lagrange", "--grid", 300, "--out", out)
        assert code == 0
        rows = [l.split(",") for l in out.read_text().splitlines() if l and not l.startswith("#")]
        stable = np.array([[float(v) for v in r[1:]] for r in rows if r[0] == "stable"])
        assert stable.shape == (300, 16)
        assert np.abs(stable[:, 1:]).max() <= 2.0

    def test_config_file_defaults_and_flag_override(self, tmp_path):
        cfg = tmp_path / "sweep.cfg"
        cfg.write_text("n-min = 5\nn-max = 6\np-offsets = 0\na = 5\ngrid = 100\n")
        out1 = tmp_path / "o1.csv"
        assert run_cli("convergence", "--config", cfg, "--out", out1) == 0
        rows = [l for l in out1.read_text().splitlines() if l and not l.startswith("#")]
        assert len(rows) == 4
        out2 = tmp_path / "o2.csv"
        assert run_cli("convergence", "--config", cfg, "--n-max", 5, "--out", out2) == 0
        rows2 = [l for l in out2.read_text().splitlines() if l and not l.startswith("#")]
        assert len(rows2) == 2
        assert "# n_max = 5" in out2.read_text()


class TestPointCommands:
    def test_check_unisolvent_output(self, tmp_path, capsys):
        points = tmp_path / "p.csv"
        points.write_text("-0.9\n-0.3\n0.3\n0.9\n")
        code = run_cli("check-unisolvent", "--points", points, "--a", 1, "--p", 3)
        assert code == 0
        out = capsys.readouterr().out
        assert "unisolvent: true" in out
        assert "rank: 4" in out

    def test_check_unisolvent_negative(self, tmp_path, capsys):
        points = tmp_path / "p.csv"
        points.write_text("0.5\n0.6\n0.7\n")
        code = run_cli("check-unisolvent", "--points", points, "--a", 1, "--p", 1)
        assert code == 0
        assert "unisolvent: false" in capsys.readouterr().out

    def test_complete_points(self, tmp_path):
        points = tmp_path / "p.csv"
        points.write_text("-1.0\n1.0\n")
        out = tmp_path / "full.csv"
        code = run_cli("complete-points", "--points", points, "--a", 1, "--p", 3, "--out", out)
        assert code == 0
        completed = read_points(out)
        assert completed.n == 4
        assert np.allclose(completed.coords[:2, 0], [-1.0, 1.0])

    def test_complete_points_deterministic(self, tmp_path):
        points = tmp_path / "p.csv"
        points.write_text("-0.5\n0.25\n")
        o1, o2 = tmp_path / "f1.csv", tmp_path / "f2.csv"
        assert run_cli("complete-points", "--points", points, "--a", 1, "--p", 4, "--out", o1) == 0
        assert run_cli("complete-points", "--points", points, "--a", 1, "--p", 4, "--out", o2) == 0
        assert o1.read_bytes() == o2.read_bytes()
