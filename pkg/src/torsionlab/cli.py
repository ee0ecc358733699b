"""Command-line front end.

Subcommands: eval (shape file -> measures and F_q), sweep (extremal
families -> CSV), verify (randomized inequality audit), thin (profile
file -> thin-limit report), search (supremum probes -> JSON). All outputs
are plain CSV/JSON for external plotting; a run manifest is written beside
every output file.

Exit codes: 0 success, 1 verified-inequality failure, 2 input error,
3 solver error.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from . import __version__, families, search, thin
from .fdsolver import ResolutionError, SolverError, torsion_fd_polygon
from .functionals import (
    CSV_HEADER as BOUND_CSV_HEADER,
    ShapeMeasures,
    alpha_q,
    f_half_bounds,
    f_q,
    polya_torsion_lower,
    ratio_checks,
)
from .geometry import (
    ConvexPolygon2D,
    Ellipsoid,
    InvalidShapeError,
    ellipse_perimeter_2d,
    ellipsoid_volume,
    load_shape,
    random_convex_polygon,
)
from .torsion import torsion_ellipsoid

EXIT_OK = 0
EXIT_VIOLATION = 1
EXIT_INPUT = 2
EXIT_SOLVER = 3


def _write_manifest(command: str, parameters: dict, outputs: list, seed: int) -> None:
    if not outputs:
        return
    manifest = {
        "command": command,
        "parameters": {k: v for k, v in sorted(parameters.items())},
        "outputs": [str(p) for p in outputs],
        "seed": seed,
        "versions": f"torsionlab {__version__}",
    }
    path = os.path.join(os.path.dirname(os.path.abspath(outputs[0])), "run_manifest.json")
    with open(path, "w") as f:
        json.dump(manifest, f, sort_keys=True, indent=2)
        f.write("\n")


def _measures_for_shape(shape, grid: float, refine: int) -> ShapeMeasures:
    if isinstance(shape, ConvexPolygon2D):
        sol = torsion_fd_polygon(shape, grid, refine=refine)
        return ShapeMeasures(
            d=2,
            perimeter=shape.perimeter,
            torsion=sol.torsion,
            volume=shape.area,
            torsion_error=sol.error_estimate,
        )
    if isinstance(shape, Ellipsoid):
        if shape.d != 2:
            raise InvalidShapeError("eval supports ellipsoids only in 2-D (analytic P)")
        return ShapeMeasures(
            d=2,
            perimeter=ellipse_perimeter_2d(shape),
            torsion=torsion_ellipsoid(shape),
            volume=ellipsoid_volume(shape),
            torsion_error=0.0,
        )
    raise InvalidShapeError(f"unsupported shape type {type(shape).__name__}")


def cmd_eval(args) -> int:
    try:
        shape = load_shape(args.shape_file)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read shape file: {exc}", file=sys.stderr)
        return EXIT_INPUT
    try:
        m = _measures_for_shape(shape, args.grid, args.refine)
    except (ResolutionError, SolverError) as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    a = alpha_q(args.q, m.d)
    value = f_q(m, args.q)
    lines = [
        f"perimeter,{m.perimeter:.12g}",
        f"torsion,{m.torsion:.12g}",
        f"torsion_error,{m.torsion_error:.12g}",
        f"volume,{m.volume:.12g}",
        f"alpha_q,{a:.12g}",
        f"f_q,{value:.12g}",
    ]
    print("\n".join(lines))
    if args.out:
        with open(args.out, "w") as f:
            f.write("quantity,value\n")
            f.write("\n".join(lines) + "\n")
        _write_manifest(
            "eval",
            {"shape_file": args.shape_file, "q": args.q, "grid": args.grid},
            [args.out],
            args.seed,
        )
    return EXIT_OK


def _parse_params(text: str):
    return [float(tok) for tok in text.split(",") if tok.strip()]


def cmd_sweep(args) -> int:
    params = _parse_params(args.params)
    if not params:
        print("error: --params must be a nonempty comma list", file=sys.stderr)
        return EXIT_INPUT
    try:
        if args.family == "slab":
            records = families.sweep_slab(args.q, args.d, params)
        elif args.family == "wiggle":
            records = families.sweep_wiggle([int(p) for p in params], amplitude=args.amplitude)
        elif args.family == "perforation":
            records = families.sweep_perforation(args.d, params, q=args.q)
        elif args.family == "cone":
            records = families.sweep_cone(args.d, params)
        else:
            print(f"error: unknown family {args.family!r}", file=sys.stderr)
            return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResolutionError, SolverError) as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    families.records_to_csv(records, args.out)
    if args.family == "slab" and len(records) >= 2:
        slope, residual = families.loglog_slope(records)
        expected = (2.0 * args.q - 1.0) * (args.d - 1.0) / args.d
        print(f"loglog_slope,{slope:.12g},expected,{expected:.12g},residual,{residual:.3g}")
    _write_manifest(
        "sweep",
        {"family": args.family, "q": args.q, "d": args.d, "params": args.params},
        [args.out],
        args.seed,
    )
    return EXIT_OK


def _verify_one(i: int, seed: int, tol: float):
    """All four convex inequalities on one random polygon; returns reports."""
    shape_seed = seed + i
    rng = np.random.default_rng(shape_seed)
    n = int(rng.integers(3, 17))
    poly = random_convex_polygon(n, shape_seed)
    h = poly.inradius() / 64.0
    sol = torsion_fd_polygon(poly, h, refine=1)
    m = ShapeMeasures(
        d=2,
        perimeter=poly.perimeter,
        torsion=sol.torsion,
        volume=poly.area,
        torsion_error=sol.error_estimate,
    )
    iso, sv = ratio_checks(m, tol=tol)
    polya = polya_torsion_lower(m, tol=tol)
    value = f_q(m, 0.5)
    _, upper, _ = f_half_bounds(2)
    slack = tol + 0.5 * m.torsion_error / m.torsion * value
    finite = type(iso)(
        name="f_half_upper",
        value=value,
        bound=upper,
        satisfied=value <= upper + slack,
        margin=upper - value,
    )
    return shape_seed, (iso, sv, polya, finite)


def cmd_verify(args) -> int:
    if args.n_shapes < 1:
        print("error: need n_shapes >= 1", file=sys.stderr)
        return EXIT_INPUT
    jobs = args.jobs or os.cpu_count() or 1
    try:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(
                pool.map(lambda i: _verify_one(i, args.seed, args.tol), range(args.n_shapes))
            )
    except (ResolutionError, SolverError) as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    offenders = []
    min_margins = {}
    with open(args.out, "w") as f:
        f.write("seed," + BOUND_CSV_HEADER + "\n")
        for shape_seed, reports in results:
            for rep in reports:
                f.write(f"{shape_seed},{rep.csv_row()}\n")
                key = rep.name
                if key not in min_margins or rep.margin < min_margins[key]:
                    min_margins[key] = rep.margin
                if not rep.satisfied:
                    offenders.append((shape_seed, rep.name))
    summary = " ".join(f"{k}={v:.3e}" for k, v in sorted(min_margins.items()))
    print(f"min_margins {summary}")
    _write_manifest(
        "verify", {"n_shapes": args.n_shapes, "tol": args.tol}, [args.out], args.seed
    )
    if offenders:
        print("violations: " + ", ".join(f"seed {s} ({n})" for s, n in offenders))
        return EXIT_VIOLATION
    print(f"all {args.n_shapes} shapes satisfied all four inequalities")
    return EXIT_OK


def cmd_thin(args) -> int:
    try:
        profile = thin.load_profile(args.profile_file)
    except (OSError, ValueError, KeyError) as exc:
        print(f"error: cannot read profile file: {exc}", file=sys.stderr)
        return EXIT_INPUT
    d = profile.d
    value = thin.thin_limit_f_half(profile)
    concave = thin.is_concave(profile, seed=args.seed)
    conjecture = d * math.sqrt(2.0 / ((d + 1.0) * (d + 2.0)))
    print(f"thin_limit_f_half,{value:.12g}")
    print(f"concave,{str(concave).lower()}")
    if concave:
        report = thin.borell_check(profile)
        print(f"borell_margin,{report.margin:.12g}")
    else:
        print("borell_margin,skipped")
    print(f"conjecture_constant_d{d},{conjecture:.12g}")
    return EXIT_OK


def cmd_search(args) -> int:
    try:
        if args.mode == "triangles":
            aspects = _parse_params(args.params) if args.params else [1.0, 0.5, 0.2, 0.1, 0.05]
            result = search.search_triangles(aspects)
        else:
            cfg = search.SearchConfig(
                mode="polygon",
                n_vertices=args.n_vertices,
                max_iters=args.iters,
                seed=args.seed,
            )
            result = search.hillclimb_polygon(cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ResolutionError, SolverError) as exc:
        print(f"error: solver failed: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    text = result.to_json(args.out)
    if args.out:
        _write_manifest(
            "search",
            {"mode": args.mode, "iters": args.iters, "n_vertices": args.n_vertices},
            [args.out],
            args.seed,
        )
    else:
        print(text)
    if result.resolution_flag:
        print("warning: grid resolution budget reached; search stopped early", file=sys.stderr)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="torsionlab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--q", type=float, default=0.5)
        p.add_argument("--d", type=int, default=2)
        p.add_argument("--grid", type=float, default=1.0 / 256.0)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--out", type=str, default=None)
        p.add_argument("--tol", type=float, default=1e-9)
        p.add_argument("--jobs", type=int, default=0)

    p_eval = sub.add_parser("eval", help="evaluate P, T, V and F_q of a shape file")
    p_eval.add_argument("shape_file")
    p_eval.add_argument("--refine", type=int, default=1)
    common(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_sweep = sub.add_parser("sweep", help="run an extremal-family sweep to CSV")
    p_sweep.add_argument("family", choices=["slab", "wiggle", "perforation", "cone"])
    p_sweep.add_argument("--params", type=str, required=True, help="comma list")
    p_sweep.add_argument("--amplitude", type=float, default=0.3)
    common(p_sweep)
    p_sweep.set_defaults(func=cmd_sweep)

    p_verify = sub.add_parser("verify", help="audit the convex inequalities on random shapes")
    p_verify.add_argument("--n-shapes", type=int, default=100)
    common(p_verify)
    p_verify.set_defaults(func=cmd_verify)

    p_thin = sub.add_parser("thin", help="thin-limit report for a profile file")
    p_thin.add_argument("profile_file")
    common(p_thin)
    p_thin.set_defaults(func=cmd_thin)

    p_search = sub.add_parser("search", help="probe the planar supremum")
    p_search.add_argument("mode", choices=["triangles", "polygon"])
    p_search.add_argument("--params", type=str, default=None, help="triangle aspects")
    p_search.add_argument("--iters", type=int, default=2000)
    p_search.add_argument("--n-vertices", type=int, default=8)
    common(p_search)
    p_search.set_defaults(func=cmd_search)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "verify" and not args.out:
        args.out = "verify.csv"
    if args.command == "sweep" and not args.out:
        args.out = f"sweep_{args.family}.csv"
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
