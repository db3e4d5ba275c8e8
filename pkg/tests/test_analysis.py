"""Lebesgue function/constant diagnostics."""

import numpy as np
import pytest

from polykern.analysis import lebesgue_function, lebesgue_growth
from polykern.indices import KernelParams
from polykern.solvers import build_stable, evaluate
from polykern.unisolvency import generate_nodes

from oracles import poly_lebesgue_constant

GRID = np.linspace(-1.0, 1.0, 1000)[:, None]


class TestLebesgueFunction:
    def test_two_point_linear_case_is_flat(self):
        # N = M_a = 2: |l1| + |l2| = 1 identically between the nodes
        X = generate_nodes("equispaced", 2, (-1, 1))
        report = lebesgue_function(X, KernelParams(1.0, 1, 1), GRID)
        assert np.max(np.abs(report.lebesgue_values - 1.0)) <= 1e-12
        assert report.constant == pytest.approx(1.0, abs=1e-12)

    def test_equals_one_at_nodes(self):
        X = generate_nodes("chebyshev", 7, (-1, 1))
        report = lebesgue_function(X, KernelParams(5.0, 10, 1), X)
        assert np.max(np.abs(report.lebesgue_values - 1.0)) <= 1e-8

    def test_constant_is_grid_maximum(self):
        X = generate_nodes("chebyshev", 5, (-1, 1))
        report = lebesgue_function(X, KernelParams(5.0, 8, 1), GRID)
        assert report.constant == report.lebesgue_values.max()
        assert report.lebesgue_values[report.argmax] == report.constant
        assert report.constant >= 1.0

    def test_stability_bound_realized(self):
        # ||I f||_inf <= Lambda * ||f|X||_inf on the grid
        rng = np.random.default_rng(4)
        X = generate_nodes("chebyshev", 8, (-1, 1))
        params = KernelParams(5.0, 11, 1)
        report = lebesgue_function(X, params, GRID)
        for _ in range(20):
            y = rng.standard_normal(8)
            model = build_stable(X, y, params)
            sup = np.abs(evaluate(model, GRID)).max()
            assert sup <= report.constant * np.abs(y).max() * (1.0 + 1e-8)

    def test_five_node_sweep_first_kind_increases(self):
        # first-kind roots: the constant grows monotonically through the
        # sweep (cross-checked against 60-digit arithmetic)
        X = generate_nodes("chebyshev", 5, (-1, 1))
        reference = {4: 1.988854, 14: 2.086122, 24: 2.419408, 34: 3.080723}
        values = {}
        for p, expected in reference.items():
            got = lebesgue_function(X, KernelParams(5.0, p, 1), GRID).constant
            values[p] = got
            assert got == pytest.approx(expected, rel=1e-4)
        assert values[4] < values[14] < values[24] < values[34]

    def test_five_node_sweep_extrema_dips(self):
        # endpoint-including nodes: the constant first decreases then
        # increases, so its minimum sits at p > N-1
        X = generate_nodes("chebyshev2", 5, (-1, 1))
        values = {
            p: lebesgue_function(X, KernelParams(5.0, p, 1), GRID).constant
            for p in (4, 14, 24, 34)
        }
        best = min(values, key=values.get)
        assert best > 4
        assert values[4] > values[14] > values[24] < values[34]


class TestLebesgueGrowth:
    def test_matches_polynomial_oracle_at_minimal_p(self):
        cells = lebesgue_growth("chebyshev", range(5, 21, 3), [0], [5.0, 10.0], grid_size=1000)
        for cell in cells:
            nodes = generate_nodes("chebyshev", cell.n, (-1, 1))
            oracle = poly_lebesgue_constant(nodes.coords[:, 0], GRID[:, 0])
            assert cell.constant == pytest.approx(oracle, rel=0.01)

    def test_chebyshev_growth_is_logarithmic_like(self):
        cells = lebesgue_growth("chebyshev", [5, 15, 25], [0], [5.0], grid_size=600)
        values = [c.constant for c in cells]
        assert values[0] < values[1] < values[2]
        # classical log bound with headroom
        assert values[-1] <= 2.0 / np.pi * np.log(25) + 1.5

    def test_equispaced_growth_is_superpolynomial(self):
        cells = lebesgue_growth("equispaced", [5, 10, 15, 20, 25], [0], [5.0], grid_size=600)
        logs = np.log([c.constant for c in cells])
        second_diffs = np.diff(logs, 2)
        assert np.all(second_diffs > 0)  # strictly log-convex growth
        assert cells[-1].constant > 1e3

    def test_rows_ordered_and_complete(self):
        cells = lebesgue_growth("chebyshev", [6, 5], [2, 0], [10.0, 5.0], grid_size=100)
        keys = [(c.n, c.p, c.a) for c in cells]
        assert keys == sorted(keys)
        assert len(cells) == 8

    def test_p_invariance_regression_guard(self):
        # constants vary by less than 2x across the p sweep at fixed (N, a)
        for n in (5, 10, 15, 20, 25, 30, 35, 40):
            for a in (5.0, 10.0):
                cells = lebesgue_growth("chebyshev", [n], [0, 2, 4, 6], [a], grid_size=500)
                values = [c.constant for c in cells]
                assert max(values) / min(values) < 2.0

    def test_2d_domain_rejected(self):
        with pytest.raises(ValueError):
            lebesgue_growth("chebyshev", [5], [0], [1.0], domain=[(-1, 1), (-1, 1)])
