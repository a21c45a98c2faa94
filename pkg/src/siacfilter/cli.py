"""Command-line interface.

Commands: table, knots, coeffs, verify, kernel-eval, filter.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 singular constraint system, 4 kernel support leaving the field domain.
Sample outputs are CSV with header "x,value" and 17 significant digits;
structured objects are UTF-8 JSON.
"""

import argparse
import json
import math
import os
import sys
from fractions import Fraction

import numpy as np

from .filtering import BoundaryError, convolve_field, convolve_monomial, ScaledKernel
from .kernel import (
    SingularMatrixError,
    build_kernel,
    build_matrix_divdiff,
    build_matrix_uniform,
    solve_coefficients,
    symmetric_knots,
)
from .serialization import kernel_to_document, read_field, read_kernel

DEFAULT_VERIFY_TOL = 1e-8

EXIT_OK = 0
EXIT_VERIFY_FAIL = 1
EXIT_BAD_INPUT = 2
EXIT_SINGULAR = 3
EXIT_BOUNDARY = 4


class CliError(Exception):
    def __init__(self, message, code=EXIT_BAD_INPUT):
        super().__init__(message)
        self.code = code


def _fmt(v):
    return f"{float(v):.17g}"


def coefficient_table(d, mode):
    """Exact coefficients over a common denominator, as "[n0, n1, ...]/q"."""
    if mode == "paper-verbatim":
        matrix = build_matrix_uniform(d)
    else:
        matrix = build_matrix_divdiff(symmetric_knots(d), d)
    coeffs = solve_coefficients(matrix)
    denom = math.lcm(*[c.denominator for c in coeffs])
    numerators = [int(c * denom) for c in coeffs]
    return "[" + ", ".join(str(n) for n in numerators) + "]/" + str(denom)


def _cmd_table(args):
    mode = "paper-verbatim" if args.paper_verbatim else "sign-corrected"
    print(coefficient_table(args.degree, mode))
    return EXIT_OK


def _cmd_knots(args):
    knots = symmetric_knots(args.degree, exact=args.exact)
    if args.exact:
        payload = [f"{k.numerator}/{k.denominator}" if k.denominator != 1 else str(k.numerator) for k in knots]
    else:
        payload = list(knots)
    print(json.dumps(payload))
    return EXIT_OK


def _load_knots(source, d):
    """Accept an inline JSON array or a path to a JSON file."""
    try:
        data = json.loads(source)
    except json.JSONDecodeError:
        try:
            with open(source, encoding="utf-8") as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read knots from {source!r}: {exc}")
    if not isinstance(data, list):
        raise CliError("knots must be a JSON array")
    try:
        knots = [Fraction(str(v)) for v in data]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"bad knot value: {exc}")
    if len(knots) != 3 * d + 2:
        raise CliError(
            f"degree {d} needs {3 * d + 2} knots, got {len(knots)}"
        )
    if any(b <= a for a, b in zip(knots, knots[1:])):
        raise CliError("knots must be strictly increasing")
    return knots


def _cmd_coeffs(args):
    d = args.degree
    if args.uniform:
        knots = symmetric_knots(d, exact=True)
    else:
        knots = _load_knots(args.knots, d)
    if not args.exact:
        knots = [float(k) for k in knots]
    try:
        kernel = build_kernel(knots, d, exact=args.exact)
    except SingularMatrixError as exc:
        raise CliError(str(exc), code=EXIT_SINGULAR)
    doc = kernel_to_document(kernel, exact=args.exact, provenance="divdiff")
    text = json.dumps(doc, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _read_kernel_or_die(path):
    try:
        return read_kernel(path)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read kernel {path!r}: {exc}")


def _cmd_verify(args):
    kernel = _read_kernel_or_die(args.kernel)
    d = kernel.degree
    delta_max = args.delta_max if args.delta_max is not None else 2 * d
    if args.range:
        lo, hi = args.range
    else:
        lo, hi = (float(v) for v in kernel.support)
    xs = np.linspace(lo, hi, args.samples)
    tol = DEFAULT_VERIFY_TOL
    env = os.environ.get("SIAC_PRECISION")
    if env:
        try:
            tol = float(env)
        except ValueError:
            raise CliError(f"bad SIAC_PRECISION value: {env!r}")
    ok = True
    for delta in range(delta_max + 1):
        worst = max(
            abs(float(convolve_monomial(kernel, delta, float(x))) - float(x) ** delta)
            / max(1.0, abs(float(x)) ** delta)
            for x in xs
        )
        gated = delta <= 2 * d
        if gated and worst > tol:
            ok = False
        print(f"delta={delta} max|residual|={worst:.3e}" + ("" if gated else " (ungated)"))
    print("verify:", "PASS" if ok else "FAIL", f"(tolerance {tol:g})")
    return EXIT_OK if ok else EXIT_VERIFY_FAIL


def _parse_points(spec):
    try:
        if ":" in spec:
            a, b, n = spec.split(":")
            a, b, n = float(a), float(b), int(n)
            if n < 1:
                raise ValueError("need at least one sample")
            return [a] if n == 1 else [float(v) for v in np.linspace(a, b, n)]
        pts = [float(tok) for tok in spec.split(",") if tok.strip()]
        if not pts:
            raise ValueError("empty point list")
        return pts
    except ValueError as exc:
        raise CliError(f"bad points spec {spec!r}: {exc}")


def _cmd_kernel_eval(args):
    kernel = _read_kernel_or_die(args.kernel)
    xs = _parse_points(args.points)
    print("x,value")
    for x in xs:
        print(f"{_fmt(x)},{_fmt(kernel(x))}")
    return EXIT_OK


def _cmd_filter(args):
    kernel = _read_kernel_or_die(args.kernel)
    try:
        field = read_field(args.field)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        raise CliError(f"cannot read field {args.field!r}: {exc}")
    xs = _parse_points(args.points)
    if args.scale is not None:
        h = args.scale
        if not h > 0:
            raise CliError("scale must be positive")
    else:
        lo, hi = field.domain
        h = (hi - lo) / len(field.cells)  # mean cell width
    try:
        values = convolve_field(ScaledKernel(kernel, h), field, xs)
    except BoundaryError as exc:
        raise CliError(str(exc), code=EXIT_BOUNDARY)
    print("x,value")
    for x, v in zip(xs, values):
        print(f"{_fmt(x)},{_fmt(v)}")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="siacfilter",
        description="Optimal SIAC B-spline convolution kernels and filtering.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table", help="print exact symmetric coefficient table")
    p.add_argument("-d", "--degree", type=int, required=True)
    grp = p.add_mutually_exclusive_group()
    grp.add_argument(
        "--paper-verbatim",
        action="store_true",
        help="uniform-formula convention (even-degree rows sum to -1)",
    )
    grp.add_argument(
        "--sign-corrected",
        action="store_true",
        help="divided-difference convention (rows sum to 1); the default",
    )
    p.set_defaults(func=_cmd_table)

    p = sub.add_parser("knots", help="print the symmetric knot sequence as JSON")
    p.add_argument("-d", "--degree", type=int, required=True)
    p.add_argument("--exact", action="store_true", help="emit p/q strings")
    p.set_defaults(func=_cmd_knots)

    p = sub.add_parser("coeffs", help="build a kernel and write its JSON document")
    p.add_argument("-d", "--degree", type=int, required=True)
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--uniform", action="store_true", help="symmetric unit-spaced knots")
    src.add_argument("--knots", help="JSON array (inline or file path), length 3d+2")
    p.add_argument("--exact", action="store_true", help="exact rational arithmetic")
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=_cmd_coeffs)

    p = sub.add_parser("verify", help="check monomial reproduction of a kernel file")
    p.add_argument("kernel")
    p.add_argument("--delta-max", type=int, default=None)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--range", nargs=2, type=float, metavar=("A", "B"))
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("kernel-eval", help="sample a kernel to CSV")
    p.add_argument("kernel")
    p.add_argument("--points", required=True, help='"a:b:n" or "x1,x2,..."')
    p.set_defaults(func=_cmd_kernel_eval)

    p = sub.add_parser("filter", help="convolve a piecewise field with a kernel")
    p.add_argument("kernel")
    p.add_argument("field")
    p.add_argument("--points", required=True, help='"a:b:n" or "x1,x2,..."')
    p.add_argument("--scale", type=float, default=None, help="kernel scale h")
    p.set_defaults(func=_cmd_filter)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
