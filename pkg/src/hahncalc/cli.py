"""Command-line front end.

Subcommands:

* kinematics: constant-acceleration trajectories on the (q,w) lattice,
  one column per solver route plus the undeformed classical reference.
* drag: resisted-fall velocities (pure drag when --g 0), closed, series,
  iterative, and classical routes.
* verify: run the randomized identity suite and print one line per
  identity with its worst residual and pass/fail status.
* sweep: run kinematics or drag over swept q and/or w values in long
  format, with the (q, w) columns prepended.

Tables go to standard output as CSV (with a '# key=value' metadata header)
or as a single JSON object with --format json; diagnostics go to standard
error.  Identical invocations produce byte-identical output.

Exit codes: 0 success; 1 usage error; 2 identity verification failure;
3 a requested output column came out entirely empty.
"""

from __future__ import annotations

import argparse
import math
import sys
from typing import Callable, NoReturn, Sequence

from .core import DEFAULT_POLICY, DeformationParams, TruncationPolicy
from .errors import NonConvergentError, PoleEncounteredError, ZeroFactorError
from .identities import DEFAULT_W_GRID, run_suite
from .kinematics import (
    KinematicState,
    accel_quotient_velocity,
    iterate_first_order,
    position_at_fixed_point,
    solve_second_order_constant_accel,
    uniform_accel_position,
)
from .resist import (
    DragParams,
    classical_drag_velocity,
    drag_velocity,
    drag_velocity_iterative,
    gravity_drag_velocity,
    gravity_drag_velocity_iterative,
    gravity_drag_velocity_series,
)
from .table import FLAG_NONCONVERGENT, FLAG_OK, FLAG_POLE, TrajectoryTable

__all__ = ["main", "build_parser"]

KINEMATICS_ROUTES = ("closed", "iterative", "second-order", "classical")
DRAG_ROUTES = ("closed", "series", "iterative", "classical")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY_FAIL = 2
EXIT_EMPTY_COLUMN = 3

# Iteration depths for the drag solvers, chosen so the far lattice point has
# contracted far enough that its boundary value no longer matters.
DEFAULT_ITER_N_PURE = 120
DEFAULT_ITER_N_GRAVITY = 150

_SEVERITY = {FLAG_OK: 0, FLAG_NONCONVERGENT: 1, FLAG_POLE: 2}


class _Parser(argparse.ArgumentParser):
    """Argument parser whose usage failures exit with status 1."""

    def error(self, message: str) -> NoReturn:
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _add_lattice_args(parser: argparse.ArgumentParser, required: bool) -> None:
    parser.add_argument(
        "--q",
        type=float,
        required=required,
        default=None,
        help="deformation base, 0 < q < 1",
    )
    parser.add_argument(
        "--w", type=float, default=None, help="lattice shift, w >= 0 (default 0)"
    )


def _add_time_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--t-start", type=float, default=0.0, help="first sample time")
    parser.add_argument("--t-end", type=float, default=2.0, help="last sample time")
    parser.add_argument(
        "--samples", type=int, default=9, help="number of uniformly spaced samples"
    )


def _add_output_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--tol",
        type=float,
        default=DEFAULT_POLICY.tol,
        help="series/product truncation tolerance",
    )
    parser.add_argument(
        "--max-terms",
        type=int,
        default=DEFAULT_POLICY.max_terms,
        help="series/product term budget before giving up",
    )
    parser.add_argument(
        "--format",
        choices=("csv", "json"),
        default="csv",
        help="output format (default csv)",
    )


def _add_kinematics_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--x0", type=float, default=0.0, help="position at t=0")
    parser.add_argument("--a", type=float, default=1.0, help="constant acceleration")


def _add_drag_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--m", type=float, default=1.0, help="mass, m > 0")
    parser.add_argument(
        "--k", type=float, default=0.5, help="drag coefficient, k > 0"
    )
    parser.add_argument(
        "--g", type=float, default=9.8, help="gravitational acceleration (0: pure drag)"
    )
    parser.add_argument(
        "--iter-n",
        type=int,
        default=None,
        help="iteration depth for the iterative route "
        f"(default {DEFAULT_ITER_N_PURE} pure drag, {DEFAULT_ITER_N_GRAVITY} with gravity)",
    )


def build_parser() -> _Parser:
    parser = _Parser(prog="hahncalc", description=__doc__.splitlines()[0])
    commands = parser.add_subparsers(dest="command", required=True)

    kin = commands.add_parser(
        "kinematics", help="constant-acceleration trajectories on the lattice"
    )
    _add_lattice_args(kin, required=True)
    kin.add_argument("--v0", type=float, default=0.0, help="initial velocity")
    _add_kinematics_args(kin)
    _add_time_args(kin)
    kin.add_argument(
        "--routes",
        default=",".join(KINEMATICS_ROUTES),
        help="comma-separated subset of: " + ",".join(KINEMATICS_ROUTES),
    )
    _add_output_args(kin)

    drag = commands.add_parser("drag", help="resisted-fall velocities")
    _add_lattice_args(drag, required=True)
    drag.add_argument("--v0", type=float, default=0.0, help="initial velocity")
    _add_drag_args(drag)
    _add_time_args(drag)
    drag.add_argument(
        "--routes",
        default=",".join(DRAG_ROUTES),
        help="comma-separated subset of: " + ",".join(DRAG_ROUTES),
    )
    _add_output_args(drag)

    verify = commands.add_parser("verify", help="run the identity suite")
    verify.add_argument(
        "--q-grid",
        default="0.3,0.5,0.9",
        help="comma-separated q values, each in (0,1)",
    )
    verify.add_argument("--seed", type=int, default=0, help="randomization seed")
    verify.add_argument(
        "--tol",
        type=float,
        default=None,
        help="override every identity's pass tolerance",
    )

    sweep = commands.add_parser(
        "sweep", help="run kinematics or drag over swept q and/or w"
    )
    sweep.add_argument("base", choices=("kinematics", "drag"), help="command to sweep")
    sweep.add_argument(
        "--sweep",
        action="append",
        default=[],
        metavar="NAME=START:STOP:COUNT",
        help="sweep q or w over an inclusive uniform grid; repeatable",
    )
    _add_lattice_args(sweep, required=False)
    sweep.add_argument("--v0", type=float, default=0.0, help="initial velocity")
    _add_kinematics_args(sweep)
    _add_drag_args(sweep)
    _add_time_args(sweep)
    sweep.add_argument(
        "--routes", default=None, help="comma-separated routes of the base command"
    )
    _add_output_args(sweep)

    return parser


def _linspace(start: float, stop: float, count: int) -> list[float]:
    """Inclusive uniformly spaced grid with the endpoints hit exactly."""
    if count == 1:
        return [start]
    step = (stop - start) / (count - 1)
    values = [start + i * step for i in range(count)]
    values[-1] = stop
    return values


def _time_grid(args: argparse.Namespace, parser: _Parser) -> list[float]:
    if args.samples < 1:
        parser.error("--samples must be at least 1")
    if args.samples > 1 and not args.t_end > args.t_start:
        parser.error("--t-end must exceed --t-start when --samples > 1")
    return _linspace(args.t_start, args.t_end, args.samples)


def _lattice_params(q: float | None, w: float | None, parser: _Parser) -> DeformationParams:
    if q is None:
        parser.error("--q is required (directly or via --sweep q=...)")
    try:
        return DeformationParams(q, 0.0 if w is None else w)
    except ValueError as exc:
        parser.error(str(exc))


def _policy(args: argparse.Namespace, parser: _Parser) -> TruncationPolicy:
    try:
        return TruncationPolicy(tol=args.tol, max_terms=args.max_terms)
    except ValueError as exc:
        parser.error(str(exc))


def _parse_routes(spec: str, allowed: Sequence[str], parser: _Parser) -> list[str]:
    names = [part.strip() for part in spec.split(",") if part.strip()]
    if not names:
        parser.error("--routes must name at least one route")
    requested: list[str] = []
    for name in names:
        if name not in allowed:
            parser.error(
                f"unknown route {name!r}; choose from {','.join(allowed)}"
            )
        if name not in requested:
            requested.append(name)
    return requested


def _evaluate_cell(fn: Callable[[float], float], t: float) -> tuple[float | None, str]:
    """Run one solver at one time, mapping failures to (None, flag)."""
    try:
        value = fn(t)
    except (PoleEncounteredError, ZeroFactorError):
        return None, FLAG_POLE
    except (NonConvergentError, OverflowError):
        return None, FLAG_NONCONVERGENT
    if not math.isfinite(value):
        return None, FLAG_NONCONVERGENT
    return value, FLAG_OK


def _evaluate_block(
    ts: Sequence[float],
    route_names: Sequence[str],
    evaluators: dict[str, Callable[[float], float]],
) -> tuple[dict[str, list[float | None]], list[str]]:
    columns: dict[str, list[float | None]] = {name: [] for name in route_names}
    flags: list[str] = []
    for t in ts:
        row_flag = FLAG_OK
        for name in route_names:
            value, cell_flag = _evaluate_cell(evaluators[name], t)
            columns[name].append(value)
            if _SEVERITY[cell_flag] > _SEVERITY[row_flag]:
                row_flag = cell_flag
        flags.append(row_flag)
    return columns, flags


def _agreement_metadata(
    route_names: Sequence[str], columns: dict[str, list[float | None]]
) -> dict[str, float]:
    """Worst pairwise disagreement between the deformed route columns."""
    out: dict[str, float] = {}
    deformed = [name for name in route_names if name != "classical"]
    for i, left in enumerate(deformed):
        for right in deformed[i + 1 :]:
            diffs = [
                abs(x - y)
                for x, y in zip(columns[left], columns[right])
                if x is not None and y is not None
            ]
            if diffs:
                out[f"agreement_{left}_{right}"] = max(diffs)
    return out


def _kinematics_evaluators(
    state: KinematicState, params: DeformationParams, policy: TruncationPolicy
) -> dict[str, Callable[[float], float]]:
    x_w0 = position_at_fixed_point(state, params)
    rhs = accel_quotient_velocity(state, params)
    return {
        "closed": lambda t: uniform_accel_position(state, t, params.q),
        "iterative": lambda t: iterate_first_order(
            rhs, t, params, x_w0, policy
        ).value,
        "second-order": lambda t: solve_second_order_constant_accel(
            state, t, params, policy
        ),
        "classical": lambda t: state.x0 + state.v0 * t + 0.5 * state.a * t * t,
    }


def _drag_evaluators(
    dp: DragParams,
    params: DeformationParams,
    policy: TruncationPolicy,
    n_steps: int,
) -> dict[str, Callable[[float], float]]:
    if dp.g == 0.0:
        closed = lambda t: drag_velocity(dp, t, params, policy)
        iterative = lambda t: drag_velocity_iterative(dp, t, params, n_steps)
    else:
        closed = lambda t: gravity_drag_velocity(dp, t, params, policy)
        iterative = lambda t: gravity_drag_velocity_iterative(dp, t, params, n_steps)
    return {
        "closed": closed,
        "series": lambda t: gravity_drag_velocity_series(dp, t, params, policy),
        "iterative": iterative,
        "classical": lambda t: classical_drag_velocity(dp, t),
    }


def _empty_requested_column(
    requested: Sequence[str], columns: dict[str, list[float | None]]
) -> bool:
    return any(
        columns[name] and all(value is None for value in columns[name])
        for name in requested
    )


def _cmd_kinematics(args: argparse.Namespace, parser: _Parser) -> tuple[TrajectoryTable, int]:
    params = _lattice_params(args.q, args.w, parser)
    policy = _policy(args, parser)
    ts = _time_grid(args, parser)
    try:
        state = KinematicState(args.x0, args.v0, args.a)
    except ValueError as exc:
        parser.error(str(exc))
    requested = _parse_routes(args.routes, KINEMATICS_ROUTES, parser)
    route_names = list(requested)
    if "classical" not in route_names:
        route_names.append("classical")  # always carry the classical reference
    evaluators = _kinematics_evaluators(state, params, policy)
    columns, flags = _evaluate_block(ts, route_names, evaluators)
    metadata: dict[str, object] = {
        "command": "kinematics",
        "q": params.q,
        "w": params.w,
        "w0": params.w0,
        "x0": state.x0,
        "v0": state.v0,
        "a": state.a,
        "t_start": args.t_start,
        "t_end": args.t_end,
        "samples": args.samples,
        "routes": ",".join(route_names),
        "tol": policy.tol,
        "max_terms": policy.max_terms,
    }
    metadata.update(_agreement_metadata(requested, columns))
    table = TrajectoryTable({"t": list(ts), **columns}, metadata, flags)
    code = EXIT_EMPTY_COLUMN if _empty_requested_column(requested, columns) else EXIT_OK
    return table, code


def _cmd_drag(args: argparse.Namespace, parser: _Parser) -> tuple[TrajectoryTable, int]:
    params = _lattice_params(args.q, args.w, parser)
    policy = _policy(args, parser)
    ts = _time_grid(args, parser)
    try:
        dp = DragParams(m=args.m, k=args.k, g=args.g, v0=args.v0)
    except ValueError as exc:
        parser.error(str(exc))
    if args.iter_n is not None and args.iter_n < 0:
        parser.error("--iter-n must be nonnegative")
    n_steps = args.iter_n
    if n_steps is None:
        n_steps = DEFAULT_ITER_N_PURE if dp.g == 0.0 else DEFAULT_ITER_N_GRAVITY
    requested = _parse_routes(args.routes, DRAG_ROUTES, parser)
    evaluators = _drag_evaluators(dp, params, policy, n_steps)
    columns, flags = _evaluate_block(ts, requested, evaluators)
    metadata: dict[str, object] = {
        "command": "drag",
        "q": params.q,
        "w": params.w,
        "w0": params.w0,
        "m": dp.m,
        "k": dp.k,
        "g": dp.g,
        "v0": dp.v0,
        "iter_n": n_steps,
        "t_start": args.t_start,
        "t_end": args.t_end,
        "samples": args.samples,
        "routes": ",".join(requested),
        "tol": policy.tol,
        "max_terms": policy.max_terms,
    }
    metadata.update(_agreement_metadata(requested, columns))
    table = TrajectoryTable({"t": list(ts), **columns}, metadata, flags)
    code = EXIT_EMPTY_COLUMN if _empty_requested_column(requested, columns) else EXIT_OK
    return table, code


def _parse_sweeps(
    specs: Sequence[str], parser: _Parser
) -> dict[str, tuple[str, list[float]]]:
    """Parse NAME=START:STOP:COUNT sweep specs into value grids."""
    sweeps: dict[str, tuple[str, list[float]]] = {}
    for spec in specs:
        name, sep, grid = spec.partition("=")
        if not sep or name not in ("q", "w"):
            parser.error(f"bad sweep spec {spec!r}; expected q=... or w=...")
        if name in sweeps:
            parser.error(f"duplicate sweep for {name!r}")
        parts = grid.split(":")
        if len(parts) != 3:
            parser.error(f"bad sweep grid {grid!r}; expected START:STOP:COUNT")
        try:
            start, stop = float(parts[0]), float(parts[1])
            count = int(parts[2])
        except ValueError:
            parser.error(f"bad sweep grid {grid!r}; expected START:STOP:COUNT")
        if count < 1:
            parser.error("sweep COUNT must be at least 1")
        if count > 1 and not stop > start:
            parser.error("sweep STOP must exceed START when COUNT > 1")
        sweeps[name] = (grid, _linspace(start, stop, count))
    return sweeps


def _cmd_sweep(args: argparse.Namespace, parser: _Parser) -> tuple[TrajectoryTable, int]:
    policy = _policy(args, parser)
    ts = _time_grid(args, parser)
    sweeps = _parse_sweeps(args.sweep, parser)
    if "q" in sweeps:
        q_values = sweeps["q"][1]
    elif args.q is not None:
        q_values = [args.q]
    else:
        parser.error("--q is required (directly or via --sweep q=...)")
    if "w" in sweeps:
        w_values = sweeps["w"][1]
    else:
        w_values = [0.0 if args.w is None else args.w]

    allowed = KINEMATICS_ROUTES if args.base == "kinematics" else DRAG_ROUTES
    requested = _parse_routes(
        args.routes if args.routes is not None else ",".join(allowed),
        allowed,
        parser,
    )
    route_names = list(requested)
    if args.base == "kinematics" and "classical" not in route_names:
        route_names.append("classical")

    metadata: dict[str, object] = {"command": "sweep", "base": args.base}
    for name in ("q", "w"):
        if name in sweeps:
            metadata[f"sweep_{name}"] = sweeps[name][0]
    if "q" not in sweeps:
        metadata["q"] = q_values[0]
    if "w" not in sweeps:
        metadata["w"] = w_values[0]

    if args.base == "kinematics":
        try:
            state = KinematicState(args.x0, args.v0, args.a)
        except ValueError as exc:
            parser.error(str(exc))
        metadata.update({"x0": state.x0, "v0": state.v0, "a": state.a})

        def block_evaluators(params: DeformationParams) -> dict[str, Callable[[float], float]]:
            return _kinematics_evaluators(state, params, policy)

    else:
        try:
            dp = DragParams(m=args.m, k=args.k, g=args.g, v0=args.v0)
        except ValueError as exc:
            parser.error(str(exc))
        if args.iter_n is not None and args.iter_n < 0:
            parser.error("--iter-n must be nonnegative")
        n_steps = args.iter_n
        if n_steps is None:
            n_steps = DEFAULT_ITER_N_PURE if dp.g == 0.0 else DEFAULT_ITER_N_GRAVITY
        metadata.update(
            {"m": dp.m, "k": dp.k, "g": dp.g, "v0": dp.v0, "iter_n": n_steps}
        )

        def block_evaluators(params: DeformationParams) -> dict[str, Callable[[float], float]]:
            return _drag_evaluators(dp, params, policy, n_steps)

    metadata.update(
        {
            "t_start": args.t_start,
            "t_end": args.t_end,
            "samples": args.samples,
            "routes": ",".join(route_names),
            "tol": policy.tol,
            "max_terms": policy.max_terms,
        }
    )

    columns: dict[str, list[float | None]] = {
        "q": [],
        "w": [],
        "t": [],
        **{name: [] for name in route_names},
    }
    flags: list[str] = []
    for q in q_values:
        for w in w_values:
            params = _lattice_params(q, w, parser)
            block_columns, block_flags = _evaluate_block(
                ts, route_names, block_evaluators(params)
            )
            columns["q"].extend([q] * len(ts))
            columns["w"].extend([w] * len(ts))
            columns["t"].extend(ts)
            for name in route_names:
                columns[name].extend(block_columns[name])
            flags.extend(block_flags)

    metadata.update(_agreement_metadata(requested, columns))
    table = TrajectoryTable(columns, metadata, flags)
    code = EXIT_EMPTY_COLUMN if _empty_requested_column(requested, columns) else EXIT_OK
    return table, code


def _cmd_verify(args: argparse.Namespace, parser: _Parser) -> int:
    try:
        q_grid = tuple(float(part) for part in args.q_grid.split(",") if part.strip())
    except ValueError:
        parser.error(f"bad --q-grid {args.q_grid!r}; expected comma-separated reals")
    if not q_grid:
        parser.error("--q-grid must name at least one q")
    for q in q_grid:
        if not 0.0 < q < 1.0:
            parser.error(f"--q-grid entries must lie in (0,1), got {q!r}")
    if args.tol is not None and args.tol <= 0.0:
        parser.error("--tol must be positive")
    results = run_suite(seed=args.seed, q_grid=q_grid, tol=args.tol)
    print("# identity-suite")
    print(f"# q_grid={','.join(repr(q) for q in q_grid)}")
    print(f"# w_grid={','.join(repr(w) for w in DEFAULT_W_GRID)}")
    print(f"# seed={args.seed}")
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        print(
            f"{result.name:<32} cases={result.cases:<5d} "
            f"max_residual={result.max_residual:.6e} "
            f"tol={result.tolerance:.1e} {status}"
        )
    return EXIT_OK if all(result.passed for result in results) else EXIT_VERIFY_FAIL


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args, parser)
    if args.command == "kinematics":
        table, code = _cmd_kinematics(args, parser)
    elif args.command == "drag":
        table, code = _cmd_drag(args, parser)
    else:
        table, code = _cmd_sweep(args, parser)
    rendered = table.to_csv() if args.format == "csv" else table.to_json()
    sys.stdout.write(rendered)
    return code


if __name__ == "__main__":
    sys.exit(main())
