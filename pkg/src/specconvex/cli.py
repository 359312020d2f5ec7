"""Command-line interface.

Subcommands wire the library into machine-readable workflows:

    check       eigenvalue membership of a matrix in a symmetric polyhedron
    lmi         exact LMI builder (polyhedron, or single-point hull)
    shadow      projected representations (H form from --poly, V from --hull)
    support     support values of hulls and zonotopes at a matrix direction
    steiner     Monte Carlo volumes of the grown matrix set, plus a fit
    verify      seeded oracle-equivalence suites with pass/fail counts
    charpoly    coefficients of det(A + tI)
    hyperbolic  factor-root and membership sampling check of a cone
    calibrate   the dimensional volume constant c_d

Exit codes: 0 success, 1 mathematical rejection (outside, failed check),
2 input or usage error. All outputs are deterministic functions of the
arguments, inputs, and seed.
"""

import argparse
import json
import sys

import numpy as np

from . import (
    majorization,
    probio,
    schurrep,
    shadowrep,
    specgeo,
    symcore,
    sympoly,
    verify,
)
from .errors import SpecConvexError

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_INPUT = 2


class UsageError(Exception):
    pass


def _load(path, expected, what):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    obj = probio.parse_problem(text)
    if not isinstance(obj, expected):
        raise UsageError(f"{path} does not contain {what}")
    return obj


def _emit(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _emit_json(args, payload):
    _emit(args, json.dumps(payload, indent=2) + "\n")


def _require_seed(args):
    if args.strict and args.seed is None:
        raise UsageError("--strict requires an explicit --seed")
    return 0 if args.seed is None else args.seed


def _problem_output(args, problem):
    fmt = args.format
    if fmt == "sdpa":
        _emit(args, probio.export_sdpa(problem))
    elif fmt == "json":
        _emit_json(args, problem.to_json_dict())
    else:
        meta = problem.metadata
        lines = [
            f"builder: {meta.get('builder')}",
            f"size: {meta.get('size')} ({meta.get('size_formula')})",
            f"exported size: {problem.exported_size()}",
            f"variables: {len(problem.variables)}",
            f"blocks: {[b.order for b in problem.blocks]}",
            f"linear: {len(problem.linear_eqs)} eq, {len(problem.linear_ineqs)} ineq",
        ]
        _emit(args, "\n".join(lines) + "\n")


def _cmd_check(args):
    P = _load(args.poly, sympoly.SymmetricPolyhedron, "a polyhedron")
    A = _load(args.matrix, np.ndarray, "a matrix")
    cert = sympoly.spectral_contains(P, A, tol=args.tol)
    if cert.margin > args.tol:
        status = "inside"
    elif cert.margin >= -args.tol:
        status = "boundary"
    else:
        status = "outside"
    _emit_json(
        args,
        {
            "inside": cert.inside,
            "status": status,
            "margin": cert.margin,
            "orbit": cert.orbit,
            "eigenvalues": list(cert.eigenvalues),
        },
    )
    return EXIT_OK if cert.inside else EXIT_REJECTED


def _cmd_lmi(args):
    if (args.poly is None) == (args.hull is None):
        raise UsageError("lmi needs exactly one of --poly or --hull")
    if args.poly:
        P = _load(args.poly, sympoly.SymmetricPolyhedron, "a polyhedron")
        problem = schurrep.build_spectrahedron(P)
    else:
        K = _load(args.hull, specgeo.OrbitHull, "an orbit hull")
        if K.radius != 0.0 or K.n_points != 1:
            raise UsageError(
                "exact LMIs from a hull need exactly one point and radius 0"
            )
        problem = schurrep.permutahedron_lmi(K.points[0])
    _problem_output(args, problem)
    return EXIT_OK


def _cmd_shadow(args):
    if (args.poly is None) == (args.hull is None):
        raise UsageError("shadow needs exactly one of --poly or --hull")
    if args.poly:
        P = _load(args.poly, sympoly.SymmetricPolyhedron, "a polyhedron")
        problem = shadowrep.build_shadow_hrep(P)
    else:
        K = _load(args.hull, specgeo.OrbitHull, "an orbit hull")
        if K.radius != 0.0 or not K.points:
            raise UsageError("the V-form shadow needs points and radius 0")
        problem = shadowrep.build_shadow_vrep(list(K.points))
    _problem_output(args, problem)
    return EXIT_OK


def _cmd_support(args):
    if (args.hull is None) == (args.zono is None):
        raise UsageError("support needs exactly one of --hull or --zono")
    B = _load(args.matrix, np.ndarray, "a matrix")
    if args.hull:
        K = _load(args.hull, specgeo.OrbitHull, "an orbit hull")
        value = specgeo.support_spectral(K, B)
        payload = {"kind": "hull", "support": value}
    else:
        Z = _load(args.zono, specgeo.SpectralZonotope, "a zonotope")
        value = specgeo.zonotope_support(Z, B)
        payload = {"kind": "zonotope", "support": value}
    if args.format == "text":
        _emit(args, f"{value:.17g}\n")
    else:
        _emit_json(args, payload)
    return EXIT_OK


def _cmd_steiner(args):
    seed = _require_seed(args)
    K = _load(args.hull, specgeo.OrbitHull, "an orbit hull")
    ts = args.t if args.t else [0.0, 0.5, 1.0, 2.0]
    rows = specgeo.steiner_mc(K, ts, n_samples=args.samples, seed=seed)
    N = K.d * (K.d + 1) // 2
    payload = {
        "d": K.d,
        "samples": args.samples,
        "seed": seed,
        "rows": [
            {"t": r.t, "volume": r.volume, "stderr": r.stderr, "acceptance": r.acceptance}
            for r in rows
        ],
    }
    if len(set(ts)) >= N + 1:
        W = specgeo.quermass_fit([(r.t, r.volume) for r in rows], N)
        payload["quermass"] = list(W)
    if args.format == "text":
        lines = [f"t={r.t:g} volume={r.volume:.6g} stderr={r.stderr:.3g}" for r in rows]
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit_json(args, payload)
    return EXIT_OK


def _cmd_verify(args):
    seed = _require_seed(args)
    names = args.suite if args.suite else None
    report = verify.run_suites(names=names, trials=args.trials, seed=seed, tol=args.tol)
    if args.format == "text":
        lines = [
            f"{s['name']}: {'pass' if s['passed'] else 'FAIL'} "
            f"({s['trials']} trials, {s['failures']} failures)"
            for s in report["suites"]
        ]
        lines.append("all passed" if report["all_passed"] else "FAILURES")
        _emit(args, "\n".join(lines) + "\n")
    else:
        _emit_json(args, report)
    return EXIT_OK if report["all_passed"] else EXIT_REJECTED


def _cmd_charpoly(args):
    A = _load(args.matrix, np.ndarray, "a matrix")
    eta = symcore.char_poly_coeffs(A)
    _emit_json(args, {"d": A.shape[0], "eta": list(eta)})
    return EXIT_OK


def _cmd_hyperbolic(args):
    seed = _require_seed(args)
    P = _load(args.poly, sympoly.SymmetricPolyhedron, "a polyhedron")
    report = specgeo.hyperbolicity_sample_check(
        P, trials=args.trials, seed=seed, tol=args.tol
    )
    _emit_json(
        args,
        {
            "trials": report.trials,
            "factors_per_trial": report.factors_per_trial,
            "skipped_factors": report.skipped_factors,
            "agreements": report.agreements,
            "disagreements": report.disagreements,
            "all_roots_real": report.all_roots_real,
            "sample_roots": list(report.sample_roots),
        },
    )
    return EXIT_OK if report.disagreements == 0 else EXIT_REJECTED


def _cmd_calibrate(args):
    seed = _require_seed(args)
    cal = specgeo.calibrate_cd(args.d, n_samples=args.samples, seed=seed)
    _emit_json(
        args,
        {
            "d": cal.d,
            "c": cal.c,
            "stderr": cal.stderr,
            "samples": cal.samples,
            "seed": cal.seed,
        },
    )
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="specconvex",
        description="Eigenvalue-defined convex sets: oracles, representations, volumes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=("json", "text")):
        p.add_argument("--tol", type=float, default=majorization.DEFAULT_TOL)
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--format", choices=fmt, default="json")
        p.add_argument("--out", default=None)
        p.add_argument("--strict", action="store_true",
                       help="require an explicit seed for randomized commands")

    p = sub.add_parser("check", help="membership of a matrix in a spectral polyhedron")
    p.add_argument("--poly", required=True)
    p.add_argument("--matrix", required=True)
    common(p)
    p.set_defaults(func=_cmd_check)

    p = sub.add_parser("lmi", help="exact LMI representation")
    p.add_argument("--poly")
    p.add_argument("--hull")
    common(p, fmt=("json", "text", "sdpa"))
    p.set_defaults(func=_cmd_lmi)

    p = sub.add_parser("shadow", help="projected representation")
    p.add_argument("--poly")
    p.add_argument("--hull")
    common(p, fmt=("json", "text", "sdpa"))
    p.set_defaults(func=_cmd_shadow)

    p = sub.add_parser("support", help="support values at a matrix direction")
    p.add_argument("--hull")
    p.add_argument("--zono")
    p.add_argument("--matrix", required=True)
    common(p)
    p.set_defaults(func=_cmd_support)

    p = sub.add_parser("steiner", help="Monte Carlo volumes of the grown set")
    p.add_argument("--hull", required=True)
    p.add_argument("--t", type=float, action="append")
    p.add_argument("--samples", type=int, default=1_000_000)
    common(p)
    p.set_defaults(func=_cmd_steiner)

    p = sub.add_parser("verify", help="oracle-equivalence suites")
    p.add_argument("--suite", action="append")
    p.add_argument("--trials", type=int, default=200)
    common(p)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("charpoly", help="coefficients of det(A + tI)")
    p.add_argument("--matrix", required=True)
    common(p)
    p.set_defaults(func=_cmd_charpoly)

    p = sub.add_parser("hyperbolic", help="cone factor/membership sampling check")
    p.add_argument("--poly", required=True)
    p.add_argument("--trials", type=int, default=1000)
    common(p)
    p.set_defaults(func=_cmd_hyperbolic)

    p = sub.add_parser("calibrate", help="volume constant c_d")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--samples", type=int, default=1_000_000)
    common(p)
    p.set_defaults(func=_cmd_calibrate)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SpecConvexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
