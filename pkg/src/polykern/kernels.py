"""Kernel and Vandermonde matrix assembly.

Kernel values are always computed from the closed form ``(a + <x, y>)**p``;
the monomial expansion is reserved for test oracles, since direct powering
costs O(d) per entry instead of O(M) and rounds better.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.spatial import cKDTree

from .errors import DuplicatePointsError
from .indices import IndexSet, KernelParams

__all__ = [
    "PointSet",
    "NEAR_DUPLICATE_TOL",
    "kernel_eval",
    "kernel_matrix",
    "cross_kernel_matrix",
    "feature_map",
    "feature_matrix",
    "vandermonde",
]

#: Max-norm separation below which two points are treated as duplicates.
NEAR_DUPLICATE_TOL = 1e-12


def _near_duplicate_pairs(coords: np.ndarray) -> list[tuple[int, int]]:
    n = coords.shape[0]
    if n < 2:
        return []
    if n <= 64:
        pairs = []
        for i in range(n):
            gap = np.max(np.abs(coords[i + 1:] - coords[i]), axis=1)
            pairs.extend((i, i + 1 + int(j)) for j in np.nonzero(gap < NEAR_DUPLICATE_TOL)[0])
        return pairs
    tree = cKDTree(coords)
    found = tree.query_pairs(NEAR_DUPLICATE_TOL, p=np.inf, output_type="ndarray")
    return [(int(i), int(j)) for i, j in found]


class PointSet:
    """An immutable set of N points in R^d.

    Rows must be pairwise distinct; exact repeats raise
    :class:`DuplicatePointsError` unless ``check_distinct=False`` is passed
    (useful to feed deliberately degenerate sets to the rank diagnostics).
    Pairs closer than ``NEAR_DUPLICATE_TOL`` in max-norm are recorded in
    ``near_duplicate_pairs`` as a warning state either way.
    """

    __slots__ = ("_coords", "near_duplicate_pairs")

    def __init__(self, coords, check_distinct: bool = True):
        arr = np.array(coords, dtype=float, order="C")
        if arr.ndim == 1:
            arr = arr[:, None]
        if arr.ndim != 2:
            raise ValueError(f"point coordinates must form an (N, d) array, got shape {arr.shape}")
        if arr.size and not np.all(np.isfinite(arr)):
            raise ValueError("point coordinates must be finite")
        self.near_duplicate_pairs = _near_duplicate_pairs(arr)
        if check_distinct:
            for i, j in self.near_duplicate_pairs:
                if np.array_equal(arr[i], arr[j]):
                    raise DuplicatePointsError(f"points {i} and {j} are identical")
        arr.setflags(write=False)
        self._coords = arr

    @property
    def coords(self) -> np.ndarray:
        return self._coords

    @property
    def n(self) -> int:
        return self._coords.shape[0]

    @property
    def d(self) -> int:
        return self._coords.shape[1]

    @property
    def has_near_duplicates(self) -> bool:
        return bool(self.near_duplicate_pairs)

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"PointSet(n={self.n}, d={self.d})"


def as_point_set(points, d: int | None = None) -> PointSet:
    """Coerce an array-like (or PointSet) into a PointSet, optionally
    checking the dimension."""
    ps = points if isinstance(points, PointSet) else PointSet(points)
    if d is not None and ps.d != d:
        raise ValueError(f"expected points in dimension {d}, got {ps.d}")
    return ps


def kernel_eval(x: Sequence[float], y: Sequence[float], params: KernelParams) -> float:
    """Evaluate ``k(x, y) = (a + <x, y>)**p`` for two points."""
    x = np.asarray(x, dtype=float).reshape(-1)
    y = np.asarray(y, dtype=float).reshape(-1)
    if x.shape != (params.d,) or y.shape != (params.d,):
        raise ValueError(f"expected vectors of length d={params.d}")
    return float((params.a + x @ y) ** params.p)


def kernel_matrix(X, params: KernelParams) -> np.ndarray:
    """Kernel matrix ``A[i, j] = k(x_i, x_j)``, exactly symmetric.

    The Gram matrix is mirrored from its lower triangle before powering so
    the result equals its transpose bit for bit.  A point at the origin
    with ``a == 0`` yields a zero row; that is legitimate here and is
    diagnosed by the rank checks downstream.
    """
    X = as_point_set(X, params.d)
    gram = X.coords @ X.coords.T
    lower = np.tril(gram)
    gram = lower + np.tril(gram, -1).T
    return (params.a + gram) ** params.p


def cross_kernel_matrix(X_eval, X, params: KernelParams) -> np.ndarray:
    """Rectangular kernel matrix ``K[i, j] = k(x_eval_i, x_j)``."""
    X_eval = as_point_set(X_eval, params.d)
    X = as_point_set(X, params.d)
    return (params.a + X_eval.coords @ X.coords.T) ** params.p


def vandermonde(X, idx: IndexSet) -> np.ndarray:
    """Vandermonde matrix ``V[i, j] = x_i ** zeta_j`` (N x M).

    Columns follow the ordering of ``idx``.  Powers are precomputed per
    coordinate (numpy integer powering uses repeated squaring) and gathered
    per column, which dominates assembly cost for large index sets.
    """
    X = as_point_set(X, idx.params.d)
    coords = X.coords
    p = idx.params.p
    powers = coords[:, :, None] ** np.arange(p + 1)[None, None, :]
    V = np.ones((X.n, idx.size))
    Z = idx.exponents
    for j in range(idx.params.d):
        V *= powers[:, j, :][:, Z[:, j]]
    return V


def feature_matrix(X, idx: IndexSet) -> np.ndarray:
    """Feature vectors as rows: ``F[i, :] = Phi(x_i)`` (N x M) with
    ``Phi(x)_j = sqrt(d_zeta_j) * x**zeta_j``."""
    return vandermonde(X, idx) * np.exp(0.5 * idx.log_coefficients)[None, :]


def feature_map(x: Sequence[float], params: KernelParams, idx: IndexSet) -> np.ndarray:
    """Feature map of a single point, so that ``Phi(x) @ Phi(y) == k(x, y)``."""
    if idx.params != params:
        raise ValueError("index set was built for different kernel parameters")
    x = np.asarray(x, dtype=float).reshape(1, -1)
    return feature_matrix(x, idx)[0]
