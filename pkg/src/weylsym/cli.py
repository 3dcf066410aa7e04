"""Command-line front end.

Exit codes: 0 success / check passed, 1 check failed, 2 usage or syntax
error, 3 engine precondition error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import checks
from .algebra import commutator
from .calculus import evolve_series, poisson_sym
from .errors import EngineError, ParseError
from .formatting import format_text, to_data
from .oracle import compare
from .parser import evaluate, evaluate_classical, parse
from .quantization import dequantize, quantize
from .symmetrization import symmetrize, weyl_closed_form, weyl_order

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_ENGINE = 0, 1, 2, 3


def _expr(text):
    return evaluate(parse(text))


def _poly_payload(poly, fmt):
    return to_data(poly) if fmt == "json" else format_text(poly)


def _classical_data(f):
    return {
        "terms": [
            {"coeff": f"{c.numerator}/{c.denominator}", "q": a, "p": b, "h": k}
            for (a, b, k), c in f.items()
        ]
    }


# --- command handlers: return (status, payload, text_lines) -------------------------


def cmd_normalize(args):
    poly = _expr(args.expr)
    return "pass", _poly_payload(poly, args.format), [format_text(poly)]


def cmd_symmetrize(args):
    poly = symmetrize(_expr(args.expr))
    return "pass", _poly_payload(poly, args.format), [format_text(poly)]


def cmd_weyl(args):
    if args.n < 0 or args.m < 0:
        raise EngineError("N and M must be nonnegative")
    poly = weyl_closed_form(args.n, args.m) if args.closed_form else weyl_order(args.n, args.m)
    return "pass", _poly_payload(poly, args.format), [format_text(poly)]


def cmd_bracket(args):
    poly = poisson_sym(_expr(args.left), _expr(args.right))
    return "pass", _poly_payload(poly, args.format), [format_text(poly)]


def cmd_commutator(args):
    poly = commutator(_expr(args.left), _expr(args.right))
    return "pass", _poly_payload(poly, args.format), [format_text(poly)]


def cmd_quantize(args):
    poly = quantize(evaluate_classical(parse(args.expr)))
    return "pass", _poly_payload(poly, args.format), [format_text(poly)]


def cmd_dequantize(args):
    f = dequantize(_expr(args.expr))
    payload = _classical_data(f) if args.format == "json" else str(f)
    return "pass", payload, [str(f)]


def cmd_evolve(args):
    series = evolve_series(_expr(args.hamiltonian), _expr(args.state), args.order)
    payload = {
        "order": series.order,
        "coefficients": [_poly_payload(c, args.format) for c in series.coefficients],
    }
    lines = [f"d^{k}rho/dt^{k}: {format_text(c)}" for k, c in enumerate(series.coefficients)]
    return "pass", payload, lines


def cmd_oracle(args):
    rep = compare(_expr(args.left), _expr(args.right), args.dim, args.hbar)
    ok = rep.max_abs_diff < args.tol
    payload = {"maxAbsDiff": rep.max_abs_diff, "safeDim": rep.safe_dim, "tolerance": args.tol}
    line = f"maxAbsDiff={rep.max_abs_diff:.3e} safeDim={rep.safe_dim} ({'PASS' if ok else 'FAIL'})"
    return ("pass" if ok else "fail"), payload, [line]


def _jsonable(v):
    if isinstance(v, tuple):
        return list(v)
    if isinstance(v, Fraction):
        return str(v)
    return v


def cmd_check(args):
    result = checks.run_check(args.name, args.max_n, args.max_m)
    rows = [
        {
            "label": r.label,
            "params": {k: _jsonable(v) for k, v in r.params.items()},
            "ok": r.ok,
            **({"detail": r.detail} if r.detail else {}),
        }
        for r in result.rows
        if args.verbose or not r.ok
    ]
    payload = {
        "check": result.name,
        "passed": result.passed,
        "cases": len(result.rows),
        "failures": len(result.failures),
        "rows": rows,
    }
    lines = []
    if args.verbose:
        for r in result.rows:
            params = " ".join(f"{k}={v}" for k, v in r.params.items())
            mark = "ok  " if r.ok else "FAIL"
            lines.append(f"{mark} {r.label:<22} {params} {r.detail}".rstrip())
    lines.append(result.summary())
    return ("pass" if result.passed else "fail"), payload, lines


# --- argument parsing ------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    common.add_argument("--verbose", action="store_true", default=argparse.SUPPRESS)

    parser = argparse.ArgumentParser(
        prog="weylsym",
        description="Exact symmetrized-product calculus in the Heisenberg enveloping algebra.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, handler, help_):
        sp = sub.add_parser(name, parents=[common], help=help_)
        sp.set_defaults(handler=handler)
        return sp

    add("normalize", cmd_normalize, "PBW normal form of an expression").add_argument("expr")
    add("symmetrize", cmd_symmetrize, "apply the symmetrizer S").add_argument("expr")

    sp = add("weyl", cmd_weyl, "Weyl-ordered q^N p^M")
    sp.add_argument("n", type=int, metavar="N")
    sp.add_argument("m", type=int, metavar="M")
    sp.add_argument("--closed-form", action="store_true", help="use the alpha-coefficient formula")

    for name, handler, help_ in (
        ("bracket", cmd_bracket, "symmetrized Poisson bracket {A, B}_S"),
        ("commutator", cmd_commutator, "commutator [A, B]"),
    ):
        sp = add(name, handler, help_)
        sp.add_argument("left", metavar="EXPR")
        sp.add_argument("right", metavar="EXPR")

    add("quantize", cmd_quantize, "quantize a classical polynomial").add_argument(
        "expr", metavar="CLASSICAL-EXPR"
    )
    add("dequantize", cmd_dequantize, "invert quantize (h-graded)").add_argument("expr")

    sp = add("evolve", cmd_evolve, "Taylor coefficients of rho(t) under d rho/dt = {H, rho}_S")
    sp.add_argument("--hamiltonian", required=True, metavar="EXPR")
    sp.add_argument("--state", required=True, metavar="EXPR")
    sp.add_argument("--order", required=True, type=int, metavar="K")

    sp = add("oracle", cmd_oracle, "compare two expressions as truncated oscillator matrices")
    sp.add_argument("--dim", required=True, type=int, metavar="N")
    sp.add_argument("--hbar", type=float, default=1.0, metavar="X")
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.add_argument("left", metavar="EXPR")
    sp.add_argument("right", metavar="EXPR")

    sp = add("check", cmd_check, "verify a theorem over a parameter grid")
    sp.add_argument("name", choices=checks.CHECKS)
    sp.add_argument("--max-n", type=int, default=None, metavar="A")
    sp.add_argument("--max-m", type=int, default=None, metavar="B")
    return parser


def _emit(args, argv, status, payload, lines, started, out=None):
    out = out or sys.stdout
    if args.format == "json":
        doc = {
            "command": list(argv),
            "status": status,
            "payload": payload,
            "timing": {"seconds": round(time.perf_counter() - started, 6)},
        }
        print(json.dumps(doc), file=out)
    else:
        for line in lines:
            print(line, file=out)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    args.format = getattr(args, "format", "text")
    args.verbose = getattr(args, "verbose", False)
    started = time.perf_counter()
    try:
        status, payload, lines = args.handler(args)
    except ParseError as err:
        _emit(args, argv, "error", {"error": str(err)}, [f"syntax error: {err}"], started,
              sys.stdout if args.format == "json" else sys.stderr)
        return EXIT_USAGE
    except EngineError as err:
        _emit(args, argv, "error", {"error": str(err)}, [f"error: {err}"], started,
              sys.stdout if args.format == "json" else sys.stderr)
        return EXIT_ENGINE
    _emit(args, argv, status, payload, lines, started)
    return EXIT_OK if status == "pass" else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
