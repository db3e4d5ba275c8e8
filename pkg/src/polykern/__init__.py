"""Interpolation with polynomial kernels ``(a + <x, y>)**p``.

The package provides unisolvency checks and point-set completion, a direct
and a numerically stable interpolation solver, native-space (RKHS)
arithmetic including the power function, Lebesgue-constant diagnostics,
and a CLI that reproduces the reference experiments at desk scale.
"""

from ._version import __version__
from .analysis import LebesgueReport, lebesgue_function, lebesgue_growth
from .errors import (
    CompletionFailed,
    CsvParseError,
    DuplicatePointsError,
    NotUnisolvent,
    PolykernError,
    SingularSystem,
    UnsupportedFamily,
)
from .indices import (
    IndexSet,
    KernelParams,
    coefficient_d,
    enumerate_index_set,
    index_set_size,
    weight_w,
)
from .kernels import (
    PointSet,
    cross_kernel_matrix,
    feature_map,
    kernel_eval,
    kernel_matrix,
    vandermonde,
)
from .native import (
    PolynomialRep,
    evaluate_polynomial,
    kernel_translate,
    native_inner,
    native_norm,
    norm_equivalence_bounds,
    polynomial_from_terms,
    power_function,
)
from .solvers import (
    DirectInterpolant,
    StableInterpolant,
    build_stable,
    evaluate,
    lagrange_basis,
    solve_direct,
)
from .unisolvency import (
    UnisolvencyReport,
    complete_to_unisolvent,
    generate_nodes,
    is_unisolvent,
)

__all__ = [
    "__version__",
    "KernelParams",
    "IndexSet",
    "enumerate_index_set",
    "index_set_size",
    "coefficient_d",
    "weight_w",
    "PointSet",
    "kernel_eval",
    "kernel_matrix",
    "cross_kernel_matrix",
    "feature_map",
    "vandermonde",
    "UnisolvencyReport",
    "is_unisolvent",
    "complete_to_unisolvent",
    "generate_nodes",
    "DirectInterpolant",
    "StableInterpolant",
    "solve_direct",
    "build_stable",
    "evaluate",
    "lagrange_basis",
    "PolynomialRep",
    "polynomial_from_terms",
    "kernel_translate",
    "evaluate_polynomial",
    "native_inner",
    "native_norm",
    "norm_equivalence_bounds",
    "power_function",
    "LebesgueReport",
    "lebesgue_function",
    "lebesgue_growth",
    "PolykernError",
    "NotUnisolvent",
    "SingularSystem",
    "CompletionFailed",
    "UnsupportedFamily",
    "DuplicatePointsError",
    "CsvParseError",
]
