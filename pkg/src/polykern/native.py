"""Native-space (RKHS) arithmetic: inner products, norms, norm-equivalence
bounds between parameter choices, and the power function.

The native space of the kernel is the polynomial space spanned by the
expansion monomials, with

    <f, g> = sum_gamma (1 / w_gamma) D^gamma f(0) D^gamma g(0)
           = sum_gamma c_gamma^f c_gamma^g / d_gamma,

where ``c_gamma`` are monomial coefficients (``D^gamma f(0) = gamma!
c_gamma``).  Monomials are orthogonal under this product, which makes the
scaled monomials ``sqrt(d_gamma) x^gamma`` an orthonormal basis; several
routines below lean on that.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from .errors import NotUnisolvent
from .indices import (
    IndexSet,
    KernelParams,
    enumerate_index_set,
    index_order,
)
from .kernels import as_point_set, feature_matrix, vandermonde
from .unisolvency import is_unisolvent

__all__ = [
    "PolynomialRep",
    "polynomial_from_terms",
    "kernel_translate",
    "evaluate_polynomial",
    "native_inner",
    "native_norm",
    "NormEquivalenceCheck",
    "norm_equivalence_bounds",
    "power_function",
]


@dataclass(frozen=True)
class PolynomialRep:
    """A polynomial as monomial coefficients over an index-set ordering."""

    ordering: IndexSet
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self):
        arr = np.asarray(self.coeffs, dtype=float).reshape(-1)
        if arr.shape != (self.ordering.size,):
            raise ValueError(
                f"coefficient vector has length {arr.shape[0]}, ordering has {self.ordering.size}"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "coeffs", arr)

    @property
    def params(self) -> KernelParams:
        return self.ordering.params

    def terms(self) -> dict:
        """Nonzero coefficients keyed by exponent tuple."""
        return {z: float(c) for z, c in zip(self.ordering.indices, self.coeffs) if c != 0.0}


def polynomial_from_terms(terms: Mapping[Sequence[int], float], params: KernelParams) -> PolynomialRep:
    """Build a representation from ``{exponent tuple: coefficient}``.

    For ``a == 0`` the space is homogeneous of degree p; any other exponent
    raises instead of silently projecting it away.
    """
    idx = enumerate_index_set(params)
    coeffs = np.zeros(idx.size)
    for zeta, c in terms.items():
        zeta = tuple(int(e) for e in zeta)
        try:
            pos = idx.position(zeta)
        except ValueError:
            if params.homogeneous and index_order(zeta) != params.p:
                raise ValueError(
                    f"monomial {zeta} has degree {index_order(zeta)}; the a=0 space "
                    f"contains only degree-{params.p} monomials"
                ) from None
            raise ValueError(f"monomial {zeta} lies outside the index set") from None
        coeffs[pos] += float(c)
    return PolynomialRep(idx, coeffs)


def kernel_translate(center: Sequence[float], params: KernelParams) -> PolynomialRep:
    """The kernel section ``k(., y)`` as a polynomial: coefficients
    ``d_zeta * y**zeta``."""
    idx = enumerate_index_set(params)
    y = np.asarray(center, dtype=float).reshape(1, -1)
    if y.shape[1] != params.d:
        raise ValueError(f"expected a point of dimension {params.d}")
    row = vandermonde(y, idx)[0]
    return PolynomialRep(idx, idx.coefficients * row)


def evaluate_polynomial(f: PolynomialRep, points) -> np.ndarray:
    """Values of f at an (n, d) array of points."""
    pts = as_point_set(points, f.params.d)
    return vandermonde(pts, f.ordering) @ f.coeffs


def _check_compatible(f: PolynomialRep, g: PolynomialRep, params: KernelParams):
    if f.params != params or g.params != params:
        raise ValueError("polynomial representations were built for different kernel parameters")
    if f.ordering.indices != g.ordering.indices:
        raise ValueError("polynomial representations use mismatched orderings")


def native_inner(f: PolynomialRep, g: PolynomialRep, params: KernelParams) -> float:
    """Native-space inner product ``sum c^f c^g / d_gamma``.

    Accumulated with compensated summation: the weights span many orders of
    magnitude.
    """
    _check_compatible(f, g, params)
    inv_d = np.exp(-f.ordering.log_coefficients)
    return math.fsum((f.coeffs * g.coeffs * inv_d).tolist())


def native_norm(f: PolynomialRep, params: KernelParams) -> float:
    """Norm induced by the native inner product; zero iff f == 0."""
    _check_compatible(f, f, params)
    inv_d = np.exp(-f.ordering.log_coefficients)
    return math.sqrt(math.fsum((f.coeffs * f.coeffs * inv_d).tolist()))


def _norm_under(terms: Mapping[tuple, float], params: KernelParams) -> float:
    return native_norm(polynomial_from_terms(terms, params), params)


@dataclass(frozen=True)
class NormEquivalenceCheck:
    """Evaluated sides of a norm-equivalence chain ``lower <= mid <= upper``."""

    lower: float
    mid: float
    upper: float
    tolerance: float

    @property
    def lower_ok(self) -> bool:
        return self.lower <= self.mid * (1.0 + self.tolerance) + self.tolerance

    @property
    def upper_ok(self) -> bool:
        return self.mid <= self.upper * (1.0 + self.tolerance) + self.tolerance


def norm_equivalence_bounds(
    f: PolynomialRep,
    a: float,
    a_prime: float,
    p: int,
    q: int,
    tolerance: float = 1e-10,
) -> NormEquivalenceCheck:
    """Evaluate one of the two norm-equivalence chains for a concrete f.

    With ``q == p`` and ``0 < a' <= a`` the chain compares the same space
    under two additive constants:

        (a'/a)^(p/2) ||f||_{a',p}  <=  ||f||_{a,p}  <=  ||f||_{a',p}.

    With ``a' == a > 0`` and ``0 <= q <= p`` it compares nested degrees for
    f of degree at most q:

        a^((p-q)/2) ||f||_{a,p}  <=  ||f||_{a,q}
                                 <=  a^((p-q)/2) C(p, p-q)^(1/2) ||f||_{a,p}.

    Returns the numeric sides; ``lower_ok``/``upper_ok`` apply the relative
    tolerance.  The fully general case (both parameters differing) is the
    composition of the two chains and is not evaluated here.
    """
    terms = f.terms()
    if q == p:
        if not (0.0 < a_prime <= a):
            raise ValueError("the equal-degree chain requires 0 < a' <= a")
        mid = _norm_under(terms, KernelParams(a, p, f.params.d))
        base = _norm_under(terms, KernelParams(a_prime, p, f.params.d))
        return NormEquivalenceCheck((a_prime / a) ** (p / 2.0) * base, mid, base, tolerance)
    if a_prime == a:
        if a <= 0.0 or not (0 <= q <= p):
            raise ValueError("the nested-degree chain requires a > 0 and 0 <= q <= p")
        if any(index_order(z) > q for z in terms):
            raise ValueError(f"f has degree > q = {q}, outside the smaller space")
        if q == 0:
            # degree-0 space: only the constant, with unit weight
            mid = abs(terms.get((0,) * f.params.d, 0.0))
        else:
            mid = _norm_under(terms, KernelParams(a, q, f.params.d))
        big = _norm_under(terms, KernelParams(a, p, f.params.d))
        scale = a ** ((p - q) / 2.0)
        return NormEquivalenceCheck(scale * big, mid, scale * math.sqrt(math.comb(p, p - q)) * big, tolerance)
    raise ValueError("vary either the additive constant or the degree, not both")


def power_function(X, params: KernelParams, x) -> float | np.ndarray:
    """Worst-case pointwise interpolation error over the native unit ball.

    Evaluated through the quadratic-form identity
    ``P(x)^2 = k(x, x) - k_x^T A^{-1} k_x`` with ``A`` in its symmetric
    Gram-factor form ``A = F^T F`` (F's columns are feature vectors): the
    quadratic form is then the squared projection of ``Phi(x)`` onto
    ``range(F)``, so ``P(x)`` is the orthogonal-complement residual norm

        P(x) = || Phi(x) - Q Q^T Phi(x) ||,       F = Q R.

    This form cannot go negative and avoids the catastrophic cancellation
    of subtracting two nearly equal quadratic forms; roundoff still gets a
    final clamp at zero by construction of the norm.

    ``x`` may be a single d-vector or an (m, d) array; the result is a
    scalar or an (m,) array accordingly.
    """
    X = as_point_set(X, params.d)
    report = is_unisolvent(X, params)
    if not report.decision:
        raise NotUnisolvent(f"point set is not unisolvent (rank {report.rank} < {X.n})")
    idx = enumerate_index_set(params)
    F = feature_matrix(X, idx).T  # M x N, columns are feature vectors
    Q, _ = np.linalg.qr(F)

    arr = np.asarray(x, dtype=float)
    if arr.ndim == 0:
        if params.d != 1:
            raise ValueError(f"a scalar is not a point in dimension {params.d}")
        pts, single = arr.reshape(1, 1), True
    elif arr.ndim == 1:
        if params.d == 1:
            pts, single = arr[:, None], arr.shape == (1,)
        else:
            if arr.shape != (params.d,):
                raise ValueError(f"expected a point of dimension {params.d}")
            pts, single = arr[None, :], True
    else:
        pts, single = arr, False
    Phi = feature_matrix(pts, idx).T  # M x m
    resid = Phi - Q @ (Q.T @ Phi)
    values = np.linalg.norm(resid, axis=0)
    return float(values[0]) if single else values
