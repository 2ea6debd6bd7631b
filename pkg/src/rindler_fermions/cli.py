"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or domain error,
3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from datetime import datetime, timezone

import numpy as np

from . import __version__
from . import entanglement as ent
from . import fock, measurement, unruh, verify
from .fock import ANTIPARTICLE, PARTICLE

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_IO = 3

THREADS_ENV = "RINDLER_FERMIONS_THREADS"


class UsageError(Exception):
    """Invalid flags or out-of-domain parameters (exit code 2)."""


def format_number(x: float) -> str:
    """9 significant digits; lowercase scientific notation when ``0 < |x| < 1e-3``."""
    x = float(x)
    if x == 0:
        return "0"
    if abs(x) < 1e-3:
        return f"{x:.8e}"
    return f"{x:.9g}"


def _thread_count() -> int:
    raw = os.environ.get(THREADS_ENV)
    if raw is None:
        return os.cpu_count() or 1
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return n


def _parallel_map(fn, items):
    """Map over sweep points; results come back in grid order regardless of completion."""
    items = list(items)
    threads = _thread_count()
    if threads == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))


def make_grid(lo: float, hi: float, steps: int, spacing: str) -> np.ndarray:
    if steps < 2:
        raise UsageError(f"--steps must be at least 2, got {steps}")
    if not lo < hi:
        raise UsageError(f"grid minimum {lo} must be below maximum {hi}")
    if spacing == "log":
        if lo <= 0:
            raise UsageError("log spacing needs a positive minimum")
        grid = np.geomspace(lo, hi, steps)
    else:
        grid = np.linspace(lo, hi, steps)
    # pin endpoints exactly so an r_max of pi/4 lands on the Bell point
    grid[0], grid[-1] = lo, hi
    return grid


def _check_r_value(r: float) -> None:
    if not 0 < r <= unruh.R_MAX:
        raise UsageError(f"r must lie in (0, pi/4], got {r}")


def _sweep_rows(args) -> tuple[list[str], list[tuple[float, ...]]]:
    if args.r_min is not None or args.r_max is not None:
        if args.r_min is None or args.r_max is None:
            raise UsageError("--r-min and --r-max must be given together")
        grid = make_grid(args.r_min, args.r_max, args.steps, args.spacing)
        for r in (grid[0], grid[-1]):
            _check_r_value(r)
        return ["r", "entropy"], _parallel_map(lambda r: (r, ent.closed_form_entropy(r)), grid)

    if args.ratio_min is not None or args.ratio_max is not None:
        if args.ratio_min is None or args.ratio_max is None:
            raise UsageError("--ratio-min and --ratio-max must be given together")
        if args.ratio_min <= 0:
            raise UsageError("omega/a must be positive; the zero ratio is the infinite-acceleration limit")
        grid = make_grid(args.ratio_min, args.ratio_max, args.steps, args.spacing)

        def row(x):
            return x, unruh.squeezing_parameter(x, 1.0), ent.exact_entropy(x, 1.0)

        return ["omega_over_a", "r", "entropy"], _parallel_map(row, grid)

    if args.a is not None:
        if args.k_min is None or args.k_max is None:
            raise UsageError("a physical sweep needs --a, --k-min and --k-max")
        grid = make_grid(args.k_min, args.k_max, args.steps, args.spacing)

        def row(k):
            params = unruh.UnruhParams(args.a, k, args.k_perp, args.m)
            return k, params.omega, params.ratio, params.r, ent.exact_entropy(params.omega, args.a)

        try:
            rows = _parallel_map(row, grid)
        except unruh.DomainError as exc:
            raise UsageError(str(exc)) from None
        return ["k", "omega", "omega_over_a", "r", "entropy"], rows

    raise UsageError("give one of: --r-min/--r-max, --ratio-min/--ratio-max, or --a with --k-min/--k-max")


def _meta(command: str) -> dict:
    return {
        "generator": "rindler-fermions",
        "version": __version__,
        "command": command,
        "created": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "argv": " ".join(sys.argv[1:]),
    }


def render_table(columns, rows, fmt: str, meta: dict | None) -> str:
    if fmt == "json":
        payload = {
            "meta": meta or {},
            "rows": [
                {c: (None if v is None else float(format_number(v))) for c, v in zip(columns, row)}
                for row in rows
            ],
        }
        return json.dumps(payload, indent=2) + "\n"
    buf = io.StringIO()
    if meta:
        for key, value in meta.items():
            buf.write(f"# {key}: {value}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow(["" if v is None else format_number(v) for v in row])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror or exc}") from exc


def cmd_entropy_curve(args) -> int:
    columns, rows = _sweep_rows(args)
    meta = None if args.no_meta else _meta("entropy-curve")
    _emit(render_table(columns, rows, args.format, meta), args.output)
    return EXIT_OK


def _resolve_r(args) -> float:
    """``--r`` beats ``--ratio`` beats the physical group."""
    if args.r is not None:
        _check_r_value(args.r)
        return args.r
    if args.ratio is not None:
        if args.ratio <= 0:
            raise UsageError(f"--ratio must be positive, got {args.ratio}")
        r = unruh.squeezing_parameter(args.ratio, 1.0)
    elif args.a is not None:
        try:
            r = unruh.UnruhParams(args.a, args.k, args.k_perp, args.m).r
        except unruh.DomainError as exc:
            raise UsageError(str(exc)) from None
    else:
        raise UsageError("give one of --r, --ratio, or --a (with --k/--k-perp/--m)")
    if r <= 0:
        raise UsageError("omega/a is so large that r underflows to 0: no detection possible")
    return r


def cmd_state(args) -> int:
    r = _resolve_r(args)
    if args.species == PARTICLE:
        state = measurement.post_state_particle(r, args.momentum)
    else:
        state = measurement.post_state_antiparticle(r, args.momentum)
    payload = fock.state_to_dict(state)
    payload.update(
        species=args.species,
        r=r,
        entropy=ent.entanglement_entropy(state, [1]),
        bell_fidelity=ent.bell_fidelity(state),
    )
    if args.format == "json":
        text = json.dumps(payload, indent=2) + "\n"
    else:
        lines = [f"register: {', '.join(payload['register'])}"]
        lines += [f"  |{e['bits']}>  {format_number(e['re'])} {format_number(e['im'])}i"
                  for e in payload["amplitudes"]]
        lines += [f"r: {format_number(r)}",
                  f"entropy: {format_number(payload['entropy'])}",
                  f"bell_fidelity: {format_number(payload['bell_fidelity'])}"]
        text = "\n".join(lines) + "\n"
    _emit(text, args.output)
    return EXIT_OK


def cmd_verify(args) -> int:
    results = verify.run_checks(args.level)
    text = json.dumps(verify.report(results, args.level), indent=2) + "\n"
    _emit(text, args.output)
    failed = [r.name for r in results if not r.passed]
    if failed:
        print(f"verification failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_expansion_error(args) -> int:
    for x in args.ratios:
        if not x > 0:
            raise UsageError(f"ratios must be positive, got {x}")
    rows = []
    previous = None
    for x in args.ratios:
        exact = ent.exact_entropy(x, 1.0)
        approx = ent.asymptotic_entropy(x, 1.0)
        err = abs(exact - approx)
        growth = None
        if previous is not None and math.isclose(x, 2 * previous[0]) and previous[1] > 0:
            growth = err / previous[1]
        rows.append((x, exact, approx, err, growth))
        previous = (x, err)
    columns = ["omega_over_a", "entropy_exact", "entropy_asymptotic", "abs_error", "error_ratio_vs_half"]
    meta = None if args.no_meta else _meta("expansion-error")
    _emit(render_table(columns, rows, args.format, meta), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rindler-fermions",
        description="Entangled fermion pairs from accelerated measurements on the Dirac vacuum.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    curve = sub.add_parser("entropy-curve", help="sweep the entanglement entropy")
    curve.add_argument("--r-min", type=float)
    curve.add_argument("--r-max", type=float)
    curve.add_argument("--ratio-min", type=float, help="minimum omega/a")
    curve.add_argument("--ratio-max", type=float, help="maximum omega/a")
    curve.add_argument("--a", type=float, help="acceleration for a sweep over k")
    curve.add_argument("--k-min", type=float)
    curve.add_argument("--k-max", type=float)
    curve.add_argument("--k-perp", type=float, default=0.0)
    curve.add_argument("--m", type=float, default=0.0)
    curve.add_argument("--steps", type=int, default=100)
    curve.add_argument("--spacing", choices=("linear", "log"), default="linear")
    curve.add_argument("--format", choices=("csv", "json"), default="csv")
    curve.add_argument("--output", "-o", default="-")
    curve.add_argument("--no-meta", action="store_true", help="omit metadata for byte-exact output")
    curve.set_defaults(func=cmd_entropy_curve)

    state = sub.add_parser("state", help="post-measurement state for one detection")
    state.add_argument("--r", type=float)
    state.add_argument("--ratio", type=float, help="omega/a")
    state.add_argument("--a", type=float)
    state.add_argument("--k", type=float, default=0.0)
    state.add_argument("--k-perp", type=float, default=0.0)
    state.add_argument("--m", type=float, default=0.0)
    state.add_argument("--species", choices=(PARTICLE, ANTIPARTICLE), default=PARTICLE)
    state.add_argument("--momentum", default="k", help="momentum tag used in mode labels")
    state.add_argument("--format", choices=("json", "text"), default="json")
    state.add_argument("--output", "-o", default="-")
    state.set_defaults(func=cmd_state)

    check = sub.add_parser("verify", help="run the built-in consistency checks")
    check.add_argument("--level", choices=("quick", "full"), default="quick")
    check.add_argument("--output", "-o", default="-")
    check.set_defaults(func=cmd_verify)

    expand = sub.add_parser("expansion-error", help="exact vs small-omega/a entropy")
    expand.add_argument("--ratios", type=float, nargs="+", required=True)
    expand.add_argument("--format", choices=("csv", "json"), default="csv")
    expand.add_argument("--output", "-o", default="-")
    expand.add_argument("--no-meta", action="store_true")
    expand.set_defaults(func=cmd_expansion_error)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (UsageError, unruh.DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
