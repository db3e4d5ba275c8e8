"""Interpolant construction: direct kernel-matrix solve and the stable
QR-based pipeline.

The direct route factorizes the kernel matrix, which becomes hopelessly
ill-conditioned as the power grows.  The stable route never inverts the
kernel matrix.  Writing the kernel matrix as ``A = V D V^T`` (rectangular
Vandermonde ``V``, positive diagonal ``D``) and taking an unpivoted QR
decomposition ``V = Q [R1 | R2]`` with ``D`` split conformally into large
entries ``D1`` and small entries ``D2``, one gets

    A = V Cu' (D1 R1^T Q^T),       Cu' = [I ; D2 R2^T R1^{-T} D1^{-1}],

so the columns of ``Cu'`` express a well-behaved basis of the interpolation
space over the monomials: the troublesome small weights ``D2`` multiply
from the left and only damp the correction block.  The correction is
evaluated entrywise as ``B[j, i] * exp(log d2_i - log d1_j)`` with
``B = R1^{-1} R2``, so the weight ratios never overflow.  Fitting then
solves the small well-scaled collocation system ``(V Cu') c_u = y`` and
evaluation is plain matrix arithmetic in the new basis.

The canonical column order sorts ``D`` non-increasingly, which is what
makes the damping argument work, but its leading N columns can be exactly
singular on symmetric node sets (e.g. monomials of degrees 2..6 all vanish
at a node at the origin).  ``build_stable`` therefore runs a light
selection scan that keeps the canonical order but defers columns adding no
new direction at roundoff level; for well-posed leading blocks the scan is
the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import lapack, lu_factor, lu_solve, solve_triangular

from .errors import NotUnisolvent, SingularSystem
from .indices import IndexSet, KernelParams, enumerate_index_set
from .kernels import PointSet, as_point_set, cross_kernel_matrix, kernel_matrix, vandermonde

__all__ = [
    "DirectInterpolant",
    "StableInterpolant",
    "solve_direct",
    "build_stable",
    "evaluate",
    "lagrange_basis",
]

_EPS = float(np.finfo(np.float64).eps)

# Relative new-direction threshold of the leading-block selection scan.
# Columns below it are structurally dependent at working precision.
_SELECT_FLOOR = 32.0 * _EPS


def _as_targets(y, n: int) -> tuple[np.ndarray, bool]:
    arr = np.asarray(y, dtype=float)
    squeeze = arr.ndim == 1
    if squeeze:
        arr = arr[:, None]
    if arr.ndim != 2 or arr.shape[0] != n:
        raise ValueError(f"target values must have shape ({n},) or ({n}, d'), got {np.shape(y)}")
    return arr, squeeze


@dataclass(frozen=True)
class DirectInterpolant:
    """Kernel interpolant from the plain linear system ``A c = y``."""

    params: KernelParams
    X: PointSet
    coefficients: np.ndarray = field(repr=False)
    condition_estimate: float
    _squeeze: bool = field(default=False, repr=False)


@dataclass(frozen=True)
class StableInterpolant:
    """Interpolant in the stable basis.

    ``ordering`` is the multi-index ordering actually used (canonical up to
    the selection scan), ``C_u_prime`` the M x N basis-change matrix whose
    top N x N block is the identity, and ``c_u`` the N x d' coefficients.
    """

    params: KernelParams
    X: PointSet
    ordering: IndexSet
    C_u_prime: np.ndarray = field(repr=False)
    c_u: np.ndarray = field(repr=False)
    _squeeze: bool = field(default=False, repr=False)

    @property
    def n(self) -> int:
        return self.X.n


def solve_direct(X, y, params: KernelParams) -> DirectInterpolant:
    """Solve ``A c = y`` by a symmetric indefinite factorization.

    Proceeds regardless of conditioning (that instability is exactly the
    phenomenon the stable solver exists to avoid) and reports a 1-norm
    condition estimate computed on the factorization.

    Raises
    ------
    SingularSystem
        If the factorization breaks down, signalling a non-unisolvent set
        or numerical breakdown.
    """
    X = as_point_set(X, params.d)
    rhs, squeeze = _as_targets(y, X.n)
    A = kernel_matrix(X, params)
    anorm = float(np.linalg.norm(A, 1))
    ldu, ipiv, info = lapack.dsytrf(A, lower=1)
    if info != 0:
        raise SingularSystem(f"symmetric factorization broke down (info={info})")
    rcond, _ = lapack.dsycon(ldu, ipiv, anorm, lower=1)
    cond = float("inf") if rcond == 0 else 1.0 / float(rcond)
    coeffs, info = lapack.dsytrs(ldu, ipiv, rhs, lower=1)
    if info != 0:
        raise SingularSystem(f"symmetric solve failed (info={info})")
    return DirectInterpolant(params, X, np.ascontiguousarray(coeffs), cond, squeeze)


def _select_leading_columns(V: np.ndarray, n: int) -> list[int]:
    """Column order for the QR: canonical, with a guard on the leading block.

    A modified Gram-Schmidt scan walks the columns in canonical order and
    defers any column whose component orthogonal to the already accepted
    ones falls below ``_SELECT_FLOOR`` relative to the column norm, until n
    columns are accepted.  Deferred columns are reconsidered once, still in
    canonical order, so that for every benign problem the result is the
    identity permutation.
    """
    m = V.shape[1]
    basis = np.zeros((V.shape[0], 0))
    accepted: list[int] = []
    deferred: list[int] = []

    def try_accept(j: int, floor: float) -> bool:
        nonlocal basis
        v = V[:, j]
        r = v - basis @ (basis.T @ v)
        r = r - basis @ (basis.T @ r)  # one reorthogonalization pass
        norm_r = float(np.linalg.norm(r))
        if norm_r > floor * float(np.linalg.norm(v)) and norm_r > 0.0:
            accepted.append(j)
            basis = np.hstack([basis, (r / norm_r)[:, None]])
            return True
        return False

    for j in range(m):
        if len(accepted) == n:
            deferred.extend(range(j, m))
            break
        if not try_accept(j, _SELECT_FLOOR):
            deferred.append(j)
    if len(accepted) < n:
        remaining = []
        for j in deferred:
            if len(accepted) == n or not try_accept(j, 0.0):
                remaining.append(j)
        deferred = remaining
    return accepted + deferred


def build_stable(X, y, params: KernelParams) -> StableInterpolant:
    """Construct the interpolant in the stable basis.

    Steps: fix the ordering (canonical + leading-block guard), assemble the
    Vandermonde matrix, QR-factor it, split ``R = [R1 | R2]`` and the
    weight diagonal into ``D1, D2``, form the damped correction block
    ``D2 R2^T R1^{-T} D1^{-1}``, and solve the collocation system
    ``V Cu' c_u = y`` (dense LU of an N x N matrix).

    Raises
    ------
    NotUnisolvent
        If N exceeds the number of expansion terms or the leading
        triangular factor is numerically singular.
    """
    X = as_point_set(X, params.d)
    rhs, squeeze = _as_targets(y, X.n)
    idx = enumerate_index_set(params)
    n, m = X.n, idx.size
    if n > m:
        raise NotUnisolvent(f"N={n} points exceed the {m}-dimensional interpolation space")

    V = vandermonde(X, idx)
    order = _select_leading_columns(V, n)
    if order[:n] != list(range(n)):
        idx = idx.reordered(order)
        V = V[:, order]

    Q, R = np.linalg.qr(V)
    R1, R2 = R[:, :n], R[:, n:]
    diag = np.abs(np.diag(R1))
    if diag.size == 0 or diag.min() <= diag.max() * max(n, m) * _EPS:
        raise NotUnisolvent("leading triangular factor is numerically singular")

    logd = idx.log_coefficients
    if m > n:
        B = solve_triangular(R1, R2, lower=False)
        # L[i, j] = d2_i / d1_j * B[j, i]; ratios <= ~1 by the D-sorting
        L = B.T * np.exp(logd[n:, None] - logd[None, :n])
    else:
        L = np.zeros((0, n))
    C_u_prime = np.vstack([np.eye(n), L])

    collocation = R1 + R2 @ L
    try:
        lu = lu_factor(collocation)
    except np.linalg.LinAlgError as exc:  # pragma: no cover - guarded above
        raise NotUnisolvent(str(exc)) from exc
    c_u = lu_solve(lu, Q.T @ rhs)
    return StableInterpolant(params, X, idx, C_u_prime, np.ascontiguousarray(c_u), squeeze)


def evaluate(model: StableInterpolant | DirectInterpolant, X_eval) -> np.ndarray:
    """Evaluate an interpolant on new points.

    The stable path forms the Vandermonde matrix of the evaluation points
    in the model's ordering, maps it through ``C_u_prime`` and applies the
    coefficients; the direct path sums kernel translates.  Output shape is
    (N_eval, d'), squeezed to (N_eval,) when the fit received 1-D targets.
    """
    if isinstance(model, StableInterpolant):
        X_eval = as_point_set(X_eval, model.params.d)
        V_eval = vandermonde(X_eval, model.ordering)
        values = (V_eval @ model.C_u_prime) @ model.c_u
    elif isinstance(model, DirectInterpolant):
        X_eval = as_point_set(X_eval, model.params.d)
        values = cross_kernel_matrix(X_eval, model.X, model.params) @ model.coefficients
    else:
        raise TypeError(f"cannot evaluate {type(model).__name__}")
    return values[:, 0] if model._squeeze else values


def lagrange_basis(X, params: KernelParams, X_eval) -> np.ndarray:
    """Lagrange (cardinal) basis evaluated on ``X_eval`` (N_eval x N).

    Column j is the stable-basis interpolant of the j-th unit vector, so a
    single construction with the identity as targets produces all of them.
    """
    X = as_point_set(X, params.d)
    model = build_stable(X, np.eye(X.n), params)
    return evaluate(model, X_eval)
