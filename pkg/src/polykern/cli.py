"""Command-line front end.

Subcommands: ``interpolate``, ``convergence``, ``lebesgue``, ``lagrange``,
``check-unisolvent``, ``complete-points``.  Every output file embeds the
fully resolved configuration and the package version in comment-prefixed
header lines, and identical configurations produce byte-identical output
regardless of the worker count.

Exit codes: 0 success, 2 parse/configuration error, 3 numerical failure,
4 I/O error.
"""

from __future__ import annotations

import argparse
import math
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from ._version import __version__
from .analysis import lebesgue_function
from .errors import (
    CompletionFailed,
    CsvParseError,
    NotUnisolvent,
    PolykernError,
    SingularSystem,
    UnsupportedFamily,
)
from .indices import KernelParams
from .io import (
    format_float,
    read_config_file,
    read_points,
    read_table,
    read_values,
    write_points,
    write_table,
)
from .solvers import build_stable, evaluate, lagrange_basis, solve_direct
from .unisolvency import complete_to_unisolvent, generate_nodes, is_unisolvent

_NODE_CHOICES = ("chebyshev", "chebyshev2", "equispaced", "random")


def _node_family(name: str) -> str:
    return "uniform_random" if name == "random" else name


# ---------------------------------------------------------------------------
# test function catalog (extensible by name)

def _runge(x):
    return 1.0 / (1.0 + 25.0 * x * x)


_FUNCTIONS = {
    "cos10x": lambda x: np.cos(10.0 * x),
    "runge": _runge,
    "absx": np.abs,
}


def get_test_function(name: str):
    """Look up a 1-D test function; ``monomial:k`` gives ``x**k``."""
    if name in _FUNCTIONS:
        return _FUNCTIONS[name]
    if name.startswith("monomial:"):
        k = int(name.split(":", 1)[1])
        if k < 0:
            raise ValueError("monomial degree must be >= 0")
        return lambda x, _k=k: x ** _k
    raise ValueError(f"unknown test function {name!r}; known: {sorted(_FUNCTIONS)} and monomial:k")


# ---------------------------------------------------------------------------
# sweep cells (top level so worker pools can pickle them)

def _convergence_cell(task):
    family, fname, n, p, a, method, grid_size, seed = task
    func = get_test_function(fname)
    nodes = generate_nodes(family, n, (-1.0, 1.0), seed=seed)
    grid = np.linspace(-1.0, 1.0, grid_size)[:, None]
    y = func(nodes.coords[:, 0])
    exact = func(grid[:, 0])
    params = KernelParams(a, p, 1)
    try:
        if method == "stable":
            model = build_stable(nodes, y, params)
            cond = float("nan")
        else:
            model = solve_direct(nodes, y, params)
            cond = model.condition_estimate
        err = float(np.max(np.abs(evaluate(model, grid) - exact)))
        return (n, p, a, method, err, cond, "ok")
    except (NotUnisolvent, SingularSystem) as exc:
        return (n, p, a, method, float("nan"), float("nan"), type(exc).__name__)


def _lebesgue_cell(task):
    family, n, p, a, grid_size, seed = task
    nodes = generate_nodes(family, n, (-1.0, 1.0), seed=seed)
    grid = np.linspace(-1.0, 1.0, grid_size)[:, None]
    try:
        report = lebesgue_function(nodes, KernelParams(a, p, 1), grid)
        return (family, n, p, a, report.constant, "ok")
    except (NotUnisolvent, SingularSystem) as exc:
        return (family, n, p, a, float("nan"), type(exc).__name__)


def _run_cells(fn, tasks, jobs):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, tasks))
    return [fn(t) for t in tasks]


# ---------------------------------------------------------------------------
# argument handling

def _parse_floats(text: str) -> list[float]:
    return [float(v) for v in str(text).split(",") if str(v).strip() != ""]


def _parse_ints(text: str) -> list[int]:
    return [int(v) for v in str(text).split(",") if str(v).strip() != ""]


def _apply_config_defaults(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset options from a key=value config file; flags win."""
    if not getattr(args, "config", None):
        return args
    file_values = read_config_file(args.config)
    for key, raw in file_values.items():
        if not hasattr(args, key):
            raise ValueError(f"unknown configuration key {key!r}")
        if getattr(args, key) is None:
            default = _BOOL_KEYS.get(key)
            if default is not None:
                setattr(args, key, raw.strip().lower() in ("1", "true", "yes", "on"))
            else:
                setattr(args, key, raw)
    return args


_BOOL_KEYS = {"header": False}


def _resolve(args, name, fallback, convert=None):
    value = getattr(args, name, None)
    if value is None:
        value = fallback
    if convert is not None and value is not None:
        value = convert(value)
    return value


def _config_dict(command: str, **pairs) -> dict:
    out = {"command": command}
    for key, value in pairs.items():
        if isinstance(value, float):
            out[key] = format_float(value)
        elif isinstance(value, (list, tuple)):
            out[key] = ",".join(str(v) for v in value)
        else:
            out[key] = value
    return out


# ---------------------------------------------------------------------------
# subcommands

def _cmd_interpolate(args) -> int:
    a = _resolve(args, "a", None, float)
    p = _resolve(args, "p", None, int)
    if a is None or p is None:
        raise ValueError("interpolate requires --a and --p")
    method = _resolve(args, "method", "stable")
    header = bool(_resolve(args, "header", False))
    fmt = _resolve(args, "format", "csv")
    out = _resolve(args, "out", "result.csv")

    points = read_points(args.points, header=header)
    values = read_values(args.values, header=header)
    if values.shape[0] != points.n:
        raise CsvParseError(args.values, 1, f"{values.shape[0]} value rows for {points.n} points")
    eval_data, _ = read_table(args.eval, header=header)

    params = KernelParams(a, p, points.d)
    config = _config_dict("interpolate", a=a, p=p, d=points.d, method=method,
                          points=args.points, values=args.values, eval=args.eval, seed=_resolve(args, "seed", 0, int))
    columns = [f"x{i + 1}" for i in range(points.d)] + [f"s{j + 1}" for j in range(values.shape[1])]

    if eval_data.size == 0:
        write_table(out, [], columns=columns, config=config, header=header, fmt=fmt)
        return 0

    if eval_data.shape[1] != points.d:
        raise CsvParseError(args.eval, 1, f"evaluation points have {eval_data.shape[1]} columns, expected {points.d}")
    if method == "direct":
        model = solve_direct(points, values, params)
        config["condition_estimate"] = format_float(model.condition_estimate)
    else:
        model = build_stable(points, values, params)
    predictions = evaluate(model, eval_data)
    rows = np.hstack([eval_data, predictions]).tolist()
    write_table(out, rows, columns=columns, config=config, header=header, fmt=fmt)
    return 0


def _cmd_convergence(args) -> int:
    n_min = _resolve(args, "n_min", 5, int)
    n_max = _resolve(args, "n_max", 50, int)
    offsets = _resolve(args, "p_offsets", [0, 2, 4, 6], _parse_ints)
    a_values = _resolve(args, "a", [5.0, 10.0], _parse_floats)
    family = _node_family(_resolve(args, "nodes", "chebyshev"))
    fname = _resolve(args, "function", "cos10x")
    method = _resolve(args, "method", "both")
    grid_size = _resolve(args, "grid", 1000, int)
    seed = _resolve(args, "seed", 0, int)
    jobs = _resolve(args, "jobs", 1, int)
    fmt = _resolve(args, "format", "csv")
    out = _resolve(args, "out", "convergence.csv")
    header = bool(_resolve(args, "header", False))

    get_test_function(fname)  # fail fast on unknown names
    methods = ["direct", "stable"] if method == "both" else [method]
    tasks = [
        (family, fname, n, n - 1 + off, a, meth, grid_size, seed)
        for n in range(n_min, n_max + 1)
        for off in sorted(offsets)
        for a in sorted(a_values)
        for meth in methods
        if n - 1 + off >= 1
    ]
    rows = _run_cells(_convergence_cell, tasks, jobs)
    rows.sort(key=lambda r: (r[0], r[1], r[2], r[3]))
    config = _config_dict("convergence", function=fname, nodes=family, n_min=n_min, n_max=n_max,
                          p_offsets=offsets, a=a_values, method=method, grid=grid_size, seed=seed)
    write_table(out, rows, columns=["n", "p", "a", "method", "max_abs_error", "condition_estimate", "status"],
                config=config, header=header, fmt=fmt)
    return 0


def _cmd_lebesgue(args) -> int:
    n_min = _resolve(args, "n_min", 5, int)
    n_max = _resolve(args, "n_max", 45, int)
    offsets = _resolve(args, "p_offsets", [0, 2, 4, 6], _parse_ints)
    a_values = _resolve(args, "a", [5.0, 10.0], _parse_floats)
    family = _node_family(_resolve(args, "nodes", "chebyshev"))
    grid_size = _resolve(args, "grid", 1000, int)
    seed = _resolve(args, "seed", 0, int)
    jobs = _resolve(args, "jobs", 1, int)
    fmt = _resolve(args, "format", "csv")
    out = _resolve(args, "out", "lebesgue.csv")
    header = bool(_resolve(args, "header", False))

    tasks = [
        (family, n, n - 1 + off, a, grid_size, seed)
        for n in range(n_min, n_max + 1)
        for off in sorted(offsets)
        for a in sorted(a_values)
        if n - 1 + off >= 1
    ]
    rows = _run_cells(_lebesgue_cell, tasks, jobs)
    rows.sort(key=lambda r: (r[1], r[2], r[3]))
    config = _config_dict("lebesgue", nodes=family, n_min=n_min, n_max=n_max,
                          p_offsets=offsets, a=a_values, grid=grid_size, seed=seed)
    write_table(out, rows, columns=["family", "n", "p", "a", "lebesgue_constant", "status"],
                config=config, header=header, fmt=fmt)
    return 0


def _cmd_lagrange(args) -> int:
    # defaults reproduce the 15-node, a=10, p=25 cardinal-function figure
    n = _resolve(args, "n", 15, int)
    a = _resolve(args, "a", 10.0, float)
    p = _resolve(args, "p", 25, int)
    family = _node_family(_resolve(args, "nodes", "chebyshev"))
    method = _resolve(args, "method", "both")
    grid_size = _resolve(args, "grid", 1000, int)
    seed = _resolve(args, "seed", 0, int)
    fmt = _resolve(args, "format", "csv")
    out = _resolve(args, "out", "lagrange.csv")
    header = bool(_resolve(args, "header", False))

    nodes = generate_nodes(family, n, (-1.0, 1.0), seed=seed)
    grid = np.linspace(-1.0, 1.0, grid_size)[:, None]
    params = KernelParams(a, p, 1)
    methods = ["direct", "stable"] if method == "both" else [method]
    rows = []
    for meth in sorted(methods):
        if meth == "stable":
            basis = lagrange_basis(nodes, params, grid)
        else:
            model = solve_direct(nodes, np.eye(n), params)
            basis = evaluate(model, grid)
        for x, row in zip(grid[:, 0], basis):
            rows.append([meth, x] + list(row))
    config = _config_dict("lagrange", n=n, a=a, p=p, nodes=family, method=method,
                          grid=grid_size, seed=seed)
    write_table(out, rows, columns=["method", "x"] + [f"l{j + 1}" for j in range(n)],
                config=config, header=header, fmt=fmt)
    return 0


def _cmd_check_unisolvent(args) -> int:
    a = _resolve(args, "a", None, float)
    p = _resolve(args, "p", None, int)
    if a is None or p is None:
        raise ValueError("check-unisolvent requires --a and --p")
    header = bool(_resolve(args, "header", False))
    points = read_points(args.points, header=header)
    report = is_unisolvent(points, KernelParams(a, p, points.d))
    print(f"unisolvent: {'true' if report.decision else 'false'}")
    print(f"rank: {report.rank}")
    print(f"smallest_singular_value: {format_float(report.smallest_singular_value)}")
    return 0


def _cmd_complete_points(args) -> int:
    a = _resolve(args, "a", None, float)
    p = _resolve(args, "p", None, int)
    if a is None or p is None:
        raise ValueError("complete-points requires --a and --p")
    header = bool(_resolve(args, "header", False))
    fmt = _resolve(args, "format", "csv")
    out = _resolve(args, "out", "completed_points.csv")
    budget = _resolve(args, "budget", None, int)
    points = read_points(args.points, header=header)
    completed = complete_to_unisolvent(points, KernelParams(a, p, points.d), candidate_budget=budget)
    config = _config_dict("complete-points", a=a, p=p, d=points.d, points=args.points,
                          budget=budget if budget is not None else 512 * points.d)
    write_points(out, completed, config=config, header=header, fmt=fmt)
    return 0


# ---------------------------------------------------------------------------

def _add_common(sub):
    sub.add_argument("--config", help="key=value configuration file; flags override it")
    sub.add_argument("--out", help="output path")
    sub.add_argument("--format", choices=("csv", "json"), dest="format")
    sub.add_argument("--header", action="store_const", const=True, default=None,
                     help="read/write a column-name line")
    sub.add_argument("--seed", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polykern",
        description="Interpolation with polynomial kernels (a + <x,y>)^p.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("interpolate", help="fit on points/values and evaluate")
    sp.add_argument("--points", required=True)
    sp.add_argument("--values", required=True)
    sp.add_argument("--eval", required=True)
    sp.add_argument("--a", type=float)
    sp.add_argument("--p", type=int)
    sp.add_argument("--method", choices=("direct", "stable"))
    _add_common(sp)
    sp.set_defaults(run=_cmd_interpolate)

    sp = sub.add_parser("convergence", help="max-error sweep over N, p, a")
    sp.add_argument("--n-min", type=int, dest="n_min")
    sp.add_argument("--n-max", type=int, dest="n_max")
    sp.add_argument("--p-offsets", dest="p_offsets", help="comma-separated offsets from N-1")
    sp.add_argument("--a", help="comma-separated list")
    sp.add_argument("--nodes", choices=_NODE_CHOICES)
    sp.add_argument("--function")
    sp.add_argument("--method", choices=("direct", "stable", "both"))
    sp.add_argument("--grid", type=int)
    sp.add_argument("--jobs", type=int)
    _add_common(sp)
    sp.set_defaults(run=_cmd_convergence)

    sp = sub.add_parser("lebesgue", help="Lebesgue-constant sweep")
    sp.add_argument("--n-min", type=int, dest="n_min")
    sp.add_argument("--n-max", type=int, dest="n_max")
    sp.add_argument("--p-offsets", dest="p_offsets")
    sp.add_argument("--a")
    sp.add_argument("--nodes", choices=_NODE_CHOICES)
    sp.add_argument("--grid", type=int)
    sp.add_argument("--jobs", type=int)
    _add_common(sp)
    sp.set_defaults(run=_cmd_lebesgue)

    sp = sub.add_parser("lagrange", help="cardinal functions on a grid")
    sp.add_argument("--n", type=int)
    sp.add_argument("--a", type=float)
    sp.add_argument("--p", type=int)
    sp.add_argument("--nodes", choices=_NODE_CHOICES)
    sp.add_argument("--method", choices=("direct", "stable", "both"))
    sp.add_argument("--grid", type=int)
    _add_common(sp)
    sp.set_defaults(run=_cmd_lagrange)

    sp = sub.add_parser("check-unisolvent", help="rank-based unisolvency decision")
    sp.add_argument("--points", required=True)
    sp.add_argument("--a", type=float)
    sp.add_argument("--p", type=int)
    _add_common(sp)
    sp.set_defaults(run=_cmd_check_unisolvent)

    sp = sub.add_parser("complete-points", help="grow a set to full interpolation size")
    sp.add_argument("--points", required=True)
    sp.add_argument("--a", type=float)
    sp.add_argument("--p", type=int)
    sp.add_argument("--budget", type=int)
    _add_common(sp)
    sp.set_defaults(run=_cmd_complete_points)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _apply_config_defaults(args)
        return args.run(args)
    except CsvParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, UnsupportedFamily) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NotUnisolvent, SingularSystem, CompletionFailed) as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
