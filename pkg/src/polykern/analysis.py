"""Lebesgue function/constant computation and stability sweeps.

All Lagrange bases here go through the stable solver: the direct route
visibly corrupts the cardinal functions well before the stable one
degrades.  The Lebesgue constant is the maximum over a finite evaluation
grid (default 1000 equispaced points in 1-D); no continuous optimization
is attempted.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .indices import KernelParams
from .kernels import PointSet, as_point_set
from .solvers import lagrange_basis
from .unisolvency import generate_nodes

__all__ = [
    "LebesgueReport",
    "lebesgue_function",
    "lebesgue_growth",
    "LebesgueCell",
]


@dataclass(frozen=True)
class LebesgueReport:
    """Lebesgue function values on a grid and their maximum."""

    grid: PointSet
    lebesgue_values: np.ndarray = field(repr=False)
    constant: float
    argmax: int


def lebesgue_function(X, params: KernelParams, grid) -> LebesgueReport:
    """Row-wise absolute sums of the Lagrange basis on the grid.

    ``constant`` is the grid maximum of the Lebesgue function; ``argmax``
    the index of the grid point attaining it.
    """
    X = as_point_set(X, params.d)
    grid = as_point_set(grid, params.d)
    basis = lagrange_basis(X, params, grid)
    values = np.abs(basis).sum(axis=1)
    arg = int(np.argmax(values)) if values.size else 0
    constant = float(values[arg]) if values.size else 0.0
    return LebesgueReport(grid, values, constant, arg)


@dataclass(frozen=True)
class LebesgueCell:
    family: str
    n: int
    p: int
    a: float
    constant: float


def lebesgue_growth(
    family: str,
    n_values,
    p_offsets,
    a_values,
    grid_size: int = 1000,
    domain=(-1.0, 1.0),
    seed: int | None = None,
) -> list[LebesgueCell]:
    """Lebesgue constants over a (N, p, a) sweep for one node family.

    ``p = N - 1 + offset`` per cell; the evaluation grid is ``grid_size``
    equispaced points over the domain.  Cells are emitted in deterministic
    (N, p, a) order; errors from degenerate cells propagate.
    """
    domain = np.atleast_2d(np.asarray(domain, dtype=float))
    if domain.shape != (1, 2):
        raise ValueError("lebesgue_growth sweeps are 1-D; pass a (lo, hi) domain")
    lo, hi = domain[0]
    grid = np.linspace(lo, hi, grid_size)[:, None]
    cells = []
    for n in sorted(int(v) for v in n_values):
        nodes = generate_nodes(family, n, (lo, hi), seed=seed)
        for offset in sorted(int(o) for o in p_offsets):
            p = n - 1 + offset
            if p < 1:
                continue
            for a in sorted(float(v) for v in a_values):
                params = KernelParams(a, p, 1)
                report = lebesgue_function(nodes, params, grid)
                cells.append(LebesgueCell(family, n, p, a, report.constant))
    return cells
