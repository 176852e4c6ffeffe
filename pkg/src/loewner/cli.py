"""Command-line interface.

Exit codes:
    0  success
    1  malformed or unreadable input
    2  numerical failure (eigensolver, near-singular matrix)
    3  input not positive definite where required
    4  ellipsoid export requested for d > 3
    5  certification failed (candidate does not dominate every input)

JSON results go to stdout (or ``--out``); diagnostics go to stderr.
"""

import argparse
import logging
import sys

import numpy as np

from . import io
from .cluster import kcenter
from .exceptions import ConvergenceError, NotPositiveDefiniteError, SingularMatrixError
from .extremal import DOMINANCE_TOL, lowner_inf, lowner_sup
from .geometry import basis_balls, ellipsoid
from .morphology import field_dilate, field_erode, parse_window
from .symmat import dominance_margin

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NUMERIC = 2
EXIT_NOT_PD = 3
EXIT_DIMENSION = 4
EXIT_CERTIFY = 5

logger = logging.getLogger("loewner")


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _extremum_doc(res):
    M = res.matrix
    return {
        "d": int(M.shape[0]),
        "matrix": M.tolist(),
        "trace": float(np.trace(M)),
        "epsilon": res.epsilon_requested,
        "iterations": res.iterations,
        "coreset": [int(i) for i in res.coreset_indices],
        "certified_ratio": res.certified_trace_ratio,
        "certified_ratio_raw": res.certified_trace_ratio_raw,
        "min_margin": res.min_margin,
        "exact": res.exact,
    }


def cmd_sup(args):
    X = io.load_matrix_set(args.input)
    res = lowner_sup(X, epsilon=args.epsilon, iterations=args.iterations)
    io.write_json(args.out, _extremum_doc(res))
    return EXIT_OK


def cmd_inf(args):
    X = io.load_matrix_set(args.input)
    res = lowner_inf(X, epsilon=args.epsilon, iterations=args.iterations)
    io.write_json(args.out, _extremum_doc(res))
    return EXIT_OK


def cmd_certify(args):
    X = io.load_matrix_set(args.input)
    C = io.load_candidate(args.candidate)
    if C.shape != X.shape[1:]:
        raise CliError(f"candidate is {C.shape[0]}x{C.shape[0]}, inputs are {X.shape[1]}x{X.shape[1]}", EXIT_INPUT)
    rows = []
    for i, S in enumerate(X):
        lam, scale = dominance_margin(C, S)
        rows.append({"index": i, "lambda_min": lam, "pass": bool(lam >= -args.tol * scale)})
    ok = all(r["pass"] for r in rows)
    io.write_json(args.out, {"pass": ok, "tol": args.tol, "margins": rows})
    if not ok:
        logger.error("candidate fails to dominate %d input(s)", sum(not r["pass"] for r in rows))
    return EXIT_OK if ok else EXIT_CERTIFY


def cmd_cluster(args):
    X = io.load_matrix_set(args.input)
    res = kcenter(X, args.k)
    io.write_json(
        args.out,
        {
            "k": args.k,
            "center_indices": [int(i) for i in res.center_indices],
            "assignment": [int(a) for a in res.assignment],
            "cost": res.cost,
        },
    )
    return EXIT_OK


def _morphology(args, op):
    F = io.load_field(args.input)
    window = parse_window(args.window, F.ndim - 2)
    io.save_field(args.out, op(F, window, args.epsilon))
    return EXIT_OK


def cmd_dilate(args):
    return _morphology(args, field_dilate)


def cmd_erode(args):
    return _morphology(args, field_erode)


def cmd_export_geometry(args):
    X = io.load_matrix_set(args.input)
    d = X.shape[-1]
    if args.mode == "ellipses":
        if d > 3:
            raise CliError(f"ellipses mode supports d <= 3, got d={d}", EXIT_DIMENSION)
        doc = {"mode": "ellipses", "d": d, "rho": args.rho,
               "ellipses": [ellipsoid(S, args.rho) for S in X]}
    else:
        doc = {"mode": "balls", **basis_balls(X, args.epsilon, args.iterations)}
    io.write_json(args.out, doc)
    return EXIT_OK


def _positive_float(text):
    value = float(text)
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text}")
    return value


def _nonneg_float(text):
    value = float(text)
    if not value >= 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative number, got {text}")
    return value


def _positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser():
    parser = argparse.ArgumentParser(prog="loewner", description="Approximate Loewner extremal matrices.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log debug information to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def extremum(name, func, help_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("input", help="matrix-set JSON file")
        p.add_argument("--epsilon", type=_positive_float, default=1e-2)
        p.add_argument("--iterations", type=_positive_int, default=None,
                       help="explicit iteration count (overrides --epsilon)")
        p.add_argument("--out", default=None, help="output path (default: stdout)")
        p.set_defaults(func=func)

    extremum("sup", cmd_sup, "approximate Loewner supremum")
    extremum("inf", cmd_inf, "approximate Loewner infimum (positive definite inputs)")

    p = sub.add_parser("certify", help="check that a candidate dominates every input")
    p.add_argument("input")
    p.add_argument("candidate", help="sup output or single-matrix set file")
    p.add_argument("--tol", type=_nonneg_float, default=DOMINANCE_TOL)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("cluster", help="greedy k-center clustering")
    p.add_argument("input")
    p.add_argument("--k", type=_positive_int, required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_cluster)

    for name, func in (("dilate", cmd_dilate), ("erode", cmd_erode)):
        p = sub.add_parser(name, help=f"matrix-field {name}")
        p.add_argument("input", help="matrix-field JSON file")
        p.add_argument("--window", default="box:3x3", help="structuring element, e.g. box:3x3 or cross:3x3x3")
        p.add_argument("--epsilon", type=_positive_float, default=1e-2)
        p.add_argument("--out", default=None)
        p.set_defaults(func=func)

    p = sub.add_parser("export-geometry", help="plot-ready ellipsoids or basis balls")
    p.add_argument("input")
    p.add_argument("--mode", choices=("ellipses", "balls"), default="ellipses")
    p.add_argument("--rho", type=_positive_float, default=1.0)
    p.add_argument("--epsilon", type=_positive_float, default=1e-2)
    p.add_argument("--iterations", type=_positive_int, default=None)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_export_geometry)
    return parser


def _configure_logging(verbose):
    for h in [h for h in logger.handlers if getattr(h, "_loewner_cli", False)]:
        logger.removeHandler(h)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname)s: %(message)s"))
    handler._loewner_cli = True
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if verbose else logging.WARNING)
    logger.propagate = False


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.func(args)
    except CliError as exc:
        logger.error("%s", exc)
        return exc.code
    except NotPositiveDefiniteError as exc:
        logger.error("%s: %s", args.command, exc)
        return EXIT_NOT_PD
    except (ConvergenceError, SingularMatrixError, np.linalg.LinAlgError, FloatingPointError) as exc:
        logger.error("%s: numerical failure: %s", args.command, exc)
        return EXIT_NUMERIC
    except (OSError, ValueError) as exc:
        logger.error("%s: bad input: %s", args.command, exc)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
