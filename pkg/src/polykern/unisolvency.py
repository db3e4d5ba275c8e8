"""Unisolvency decisions, point-set completion, and node generation.

A point set admits a unique kernel interpolant exactly when its rectangular
Vandermonde matrix has full row rank, which is also equivalent to the
kernel matrix being positive definite.  The decision here is the standard
rank-revealing SVD convention; callers get the rank and smallest singular
value alongside the boolean so they can apply stricter thresholds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import qmc

from .errors import CompletionFailed, NotUnisolvent, UnsupportedFamily
from .indices import IndexSet, KernelParams, enumerate_index_set, index_set_size
from .kernels import PointSet, as_point_set, vandermonde

__all__ = [
    "UnisolvencyReport",
    "is_unisolvent",
    "complete_to_unisolvent",
    "generate_nodes",
    "NODE_FAMILIES",
]

_EPS = float(np.finfo(np.float64).eps)


@dataclass(frozen=True)
class UnisolvencyReport:
    """Outcome of the rank criterion for one (X, params) pair."""

    decision: bool
    rank: int
    smallest_singular_value: float

    def __bool__(self) -> bool:
        return self.decision


def _rank_tolerance(singular_values: np.ndarray, n: int, m: int) -> float:
    if singular_values.size == 0:
        return 0.0
    return float(singular_values[0]) * max(n, m) * _EPS


def is_unisolvent(X, params: KernelParams, idx: IndexSet | None = None) -> UnisolvencyReport:
    """Decide whether X admits a unique interpolant for these parameters.

    True iff ``N <= M_a`` and the N x M_a Vandermonde matrix has numerical
    row rank N.  Near-duplicate rows (closer than 1e-12 in max-norm) force
    a negative decision: rank is numerically meaningless below roundoff
    separation.
    """
    X = as_point_set(X, params.d)
    if idx is None:
        idx = enumerate_index_set(params)
    m = idx.size
    if X.n > m:
        # More points than expansion terms: the kernel matrix is always
        # singular, no rank computation needed.
        return UnisolvencyReport(False, min(X.n, m), 0.0)
    V = vandermonde(X, idx)
    s = np.linalg.svd(V, compute_uv=False)
    tol = _rank_tolerance(s, X.n, m)
    rank = int(np.count_nonzero(s > tol))
    smallest = float(s[X.n - 1]) if X.n >= 1 else 0.0
    decision = rank == X.n and not X.has_near_duplicates
    return UnisolvencyReport(decision, rank, smallest)


def _candidate_box(X: PointSet) -> tuple[np.ndarray, np.ndarray]:
    lo = X.coords.min(axis=0)
    hi = X.coords.max(axis=0)
    width = hi - lo
    pad = np.where(width > 0, 0.5 * width, 1.0)
    return lo - pad, hi + pad


def complete_to_unisolvent(X, params: KernelParams, candidate_budget: int | None = None) -> PointSet:
    """Grow X to a set of M_a points whose square Vandermonde is invertible.

    The input must already be unisolvent (raises :class:`NotUnisolvent`
    otherwise) and is returned as a prefix of the result.  Candidates are a
    Halton sample over the bounding box of X inflated by 50% per side;
    each greedy step appends the candidate maximizing the smallest singular
    value of the augmented row set, ties resolved to the lowest candidate
    index.

    Raises
    ------
    CompletionFailed
        If no candidate raises the rank at some step.  Retry with a larger
        ``candidate_budget``.
    """
    X = as_point_set(X, params.d)
    idx = enumerate_index_set(params)
    m = idx.size
    report = is_unisolvent(X, params, idx)
    if not report.decision:
        raise NotUnisolvent(f"input set is not unisolvent (rank {report.rank} < {X.n})")
    if X.n == m:
        return X

    if candidate_budget is None:
        candidate_budget = 512 * params.d
    lo, hi = _candidate_box(X)
    sampler = qmc.Halton(d=params.d, scramble=False)
    candidates = qmc.scale(sampler.random(candidate_budget), lo, hi)

    rows = vandermonde(X, idx)
    cand_rows = vandermonde(candidates, idx)
    coords = X.coords
    used = np.zeros(candidate_budget, dtype=bool)
    for _ in range(m - X.n):
        k = rows.shape[0]
        best_j = -1
        best_s = -1.0
        for j in range(candidate_budget):
            if used[j]:
                continue
            s = np.linalg.svd(np.vstack([rows, cand_rows[j]]), compute_uv=False)
            # (k+1)-th singular value: how much new rank the candidate adds
            gain = float(s[k])
            if gain > best_s:
                best_s = gain
                best_j = j
        if best_j < 0:
            raise CompletionFailed("candidate pool exhausted")
        trial = np.vstack([rows, cand_rows[best_j]])
        s = np.linalg.svd(trial, compute_uv=False)
        if best_s <= _rank_tolerance(s, k + 1, m):
            raise CompletionFailed(
                f"no candidate raised the rank at step {k - X.n + 1} (budget {candidate_budget})"
            )
        used[best_j] = True
        rows = trial
        coords = np.vstack([coords, candidates[best_j]])

    out = PointSet(coords)
    s = np.linalg.svd(rows, compute_uv=False)
    if s[-1] <= _rank_tolerance(s, m, m):
        raise CompletionFailed("completed square Vandermonde is numerically singular")
    return out


def _map_affine(t: np.ndarray, lo: float, hi: float) -> np.ndarray:
    # t in [-1, 1] onto [lo, hi]
    return lo + (hi - lo) * (t + 1.0) / 2.0


def _chebyshev(n: int) -> np.ndarray:
    i = np.arange(1, n + 1)
    return np.cos((2 * i - 1) * np.pi / (2 * n))


def _chebyshev_extrema(n: int) -> np.ndarray:
    if n == 1:
        return np.zeros(1)
    return np.cos(np.arange(n) * np.pi / (n - 1))


def _normalize_domain(domain) -> list[tuple[float, float]]:
    arr = np.asarray(domain, dtype=float)
    if arr.ndim == 1:
        if arr.shape != (2,):
            raise ValueError("a 1-D domain must be a (lo, hi) pair")
        arr = arr[None, :]
    if arr.ndim != 2 or arr.shape[1] != 2 or np.any(arr[:, 0] >= arr[:, 1]):
        raise ValueError("domain must be a sequence of (lo, hi) pairs with lo < hi")
    return [(float(lo), float(hi)) for lo, hi in arr]


NODE_FAMILIES = ("chebyshev", "chebyshev2", "equispaced", "tensor_grid", "uniform_random")


def generate_nodes(family: str, n: int, domain, seed: int | None = None) -> PointSet:
    """Generate interpolation nodes of a named family inside a box domain.

    Families
    --------
    chebyshev
        1-D only: ``cos((2i-1) pi / (2n))``, i = 1..n, affinely mapped.
    chebyshev2
        1-D only: the n extrema ``cos(i pi / (n-1))``, i = 0..n-1 (single
        midpoint for n = 1); includes the interval endpoints.
    equispaced
        1-D only: n equally spaced points including the endpoints.
    tensor_grid
        Tensor product of n equispaced points per axis (n**d points).
    uniform_random
        n points drawn uniformly from the box with the given seed.
    """
    if n < 1:
        raise ValueError("node count must be >= 1")
    box = _normalize_domain(domain)
    d = len(box)
    if family in ("chebyshev", "chebyshev2", "equispaced"):
        if d != 1:
            raise UnsupportedFamily(f"family {family!r} is 1-D only, got d={d}")
        lo, hi = box[0]
        if family == "chebyshev":
            pts = _map_affine(_chebyshev(n), lo, hi)
        elif family == "chebyshev2":
            pts = _map_affine(_chebyshev_extrema(n), lo, hi)
        else:
            pts = np.linspace(lo, hi, n)
        return PointSet(pts[:, None])
    if family == "tensor_grid":
        axes = [np.linspace(lo, hi, n) for lo, hi in box]
        mesh = np.meshgrid(*axes, indexing="ij")
        return PointSet(np.stack([m.reshape(-1) for m in mesh], axis=1))
    if family == "uniform_random":
        rng = np.random.default_rng(seed)
        lo = np.array([b[0] for b in box])
        hi = np.array([b[1] for b in box])
        return PointSet(rng.uniform(lo, hi, size=(n, d)))
    raise UnsupportedFamily(f"unknown node family {family!r}")
