"""Command-line front end.

Every computation in the package is reachable from one subcommand, and every
invocation prints exactly one OutputRecord per result: stable ``key: value``
lines in text mode, one JSON object per line in structured mode.  stdout is
reserved for records, stderr for logs; exit codes are 0 (success), 1 (usage
or domain error), 2 (non-convergence under --strict).
"""
from __future__ import annotations

import argparse
import json
import logging
import math
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from . import exact, finite_part, integral, series, zeta

log = logging.getLogger("cesaro.cli")

FORMAT_ENV = "CESARO_FORMAT"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NOT_CONVERGED = 2

OUTPUT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "cesaro OutputRecord",
    "type": "object",
    "required": ["command", "inputs", "result"],
    "properties": {
        "command": {"type": "string"},
        "inputs": {"type": "object"},
        "result": {
            "type": "object",
            "properties": {
                "exact": {"type": "string", "pattern": "^-?[0-9]+(/[0-9]+)?$"},
                "float": {"type": "number"},
            },
            "additionalProperties": True,
        },
        "diagnostics": {
            "type": ["object", "null"],
            "properties": {
                "order": {"type": "integer", "minimum": 0},
                "n_terms": {"type": "integer", "minimum": 0},
                "error_estimate": {"type": ["number", "null"]},
                "converged": {"type": "boolean"},
            },
            "additionalProperties": True,
        },
    },
    "additionalProperties": False,
}


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_fmt(x) for x in v)
    return str(v)


@dataclass
class OutputRecord:
    """One reported result: the command, echoed inputs, values, diagnostics."""

    command: str
    inputs: dict = field(default_factory=dict)
    result: dict = field(default_factory=dict)
    diagnostics: Optional[dict] = None

    def to_text(self) -> str:
        lines = [f"command: {self.command}"]
        for key, val in self.inputs.items():
            lines.append(f"inputs.{key}: {_fmt(val)}")
        for key, val in self.result.items():
            lines.append(f"result.{key}: {_fmt(val)}")
        if self.diagnostics is not None:
            for key, val in self.diagnostics.items():
                lines.append(f"diagnostics.{key}: {_fmt(val)}")
        return "\n".join(lines)

    def to_json_dict(self) -> dict:
        out = {"command": self.command, "inputs": dict(self.inputs),
               "result": dict(self.result)}
        if self.diagnostics is not None:
            out["diagnostics"] = dict(self.diagnostics)
        return out

    @classmethod
    def from_json_dict(cls, d: dict) -> "OutputRecord":
        return cls(command=d["command"], inputs=dict(d["inputs"]),
                   result=dict(d["result"]),
                   diagnostics=dict(d["diagnostics"]) if "diagnostics" in d else None)


def _emit(record: OutputRecord, fmt: str) -> None:
    if fmt == "structured":
        print(json.dumps(record.to_json_dict(), separators=(",", ":")))
    else:
        print(record.to_text())


def _exact_result(value: Fraction) -> dict:
    return {"exact": str(value), "float": float(value)}


def _diag(ev) -> dict:
    return {"order": ev.order, "n_terms": ev.n_terms,
            "error_estimate": ev.error_estimate, "converged": ev.converged}


# -- builders for the named inputs -------------------------------------------

def _build_sequence(args) -> series.SeriesSpec:
    name = args.sequence
    if name == "alt-sign":
        return series.SeriesSpec(lambda n: (-1.0) ** n, label="alt-sign")
    if name == "alt-sign-n":
        return series.SeriesSpec(lambda n: (-1.0) ** n * n, label="alt-sign-n")
    if name == "geometric":
        if args.ratio is None:
            raise ValueError("sequence 'geometric' needs --ratio")
        r = args.ratio
        return series.SeriesSpec(lambda n: r ** n, label=f"geometric({r:g})")
    if name == "power":
        if args.power is None:
            raise ValueError("sequence 'power' needs --power")
        p = args.power
        return series.SeriesSpec(lambda n: float(n) ** p, start=1,
                                 label=f"power({p:g})")
    raise ValueError(f"unknown sequence {name!r}")


def _build_integrand(args) -> integral.IntegrandSpec:
    name = args.integrand
    if name == "sin":
        return integral.sin_wave(args.freq)
    if name == "cos":
        return integral.cos_wave(args.freq)
    if name == "exp-decay":
        return integral.exp_decay()
    if name == "power-log":
        return integral.power_log(args.alpha, args.logpow)
    raise ValueError(f"unknown integrand {name!r}")


def _grid_to(x_max: float):
    lo = max(1.0, x_max / 1000.0)
    return integral.default_grid(lo=lo, hi=x_max)


# -- subcommand handlers -------------------------------------------------------

def _cmd_bernoulli(args, fmt: str) -> int:
    b = exact.bernoulli(args.n)
    _emit(OutputRecord("bernoulli", {"n": args.n}, _exact_result(b)), fmt)
    return EXIT_OK


def _cmd_faulhaber(args, fmt: str) -> int:
    s = exact.faulhaber_sum(args.n, args.m)
    _emit(OutputRecord("faulhaber", {"n": args.n, "m": args.m},
                       _exact_result(s)), fmt)
    return EXIT_OK


def _cmd_zeta(args, fmt: str) -> int:
    if args.s > 0:
        raise ValueError("the exact path covers zeta(s) for integer s <= 0 only")
    z = exact.zeta_neg_int(-args.s)
    _emit(OutputRecord("zeta", {"s": args.s}, _exact_result(z)), fmt)
    return EXIT_OK


def _cmd_pm_poly(args, fmt: str) -> int:
    p = exact.pm_polynomial(args.n, args.m)
    result = {"coeffs": [str(c) for c in p.coeffs],
              "mean": str(exact.periodic_mean(p))}
    _emit(OutputRecord("pm-poly", {"n": args.n, "m": args.m}, result), fmt)
    return EXIT_OK


def _alpha_sweep(args):
    if args.alpha_range is not None:
        lo, hi, step = args.alpha_range
        if step <= 0:
            raise ValueError("--alpha-range step must be positive")
        a = lo
        while a <= hi + 1e-12:
            yield a
            a += step
    elif args.alpha is not None:
        yield args.alpha
    else:
        raise ValueError("one of --alpha or --alpha-range is required")


def _run_estimates(args, fmt: str, estimator, command: str) -> int:
    worst = EXIT_OK
    emitted = False
    for a in _alpha_sweep(args):
        try:
            ev = estimator(a, k=args.order, X_max=args.xmax, tol=args.tol)
        except ValueError as exc:
            if args.alpha_range is None:
                raise
            log.warning("skipping alpha=%g: %s", a, exc)
            continue
        inputs = {"alpha": a, "order": ev.order, "xmax": args.xmax,
                  "tol": args.tol}
        rec = OutputRecord(command, inputs, {"float": ev.value}, _diag(ev))
        _emit(rec, fmt)
        emitted = True
        if args.strict and not ev.converged:
            worst = EXIT_NOT_CONVERGED
    if not emitted:
        raise ValueError("no alpha in the requested range was usable")
    return worst


def _cmd_zeta_estimate(args, fmt: str) -> int:
    return _run_estimates(args, fmt, zeta.zeta_via_cesaro, "zeta-estimate")


def _cmd_zeta_prime_estimate(args, fmt: str) -> int:
    return _run_estimates(args, fmt, zeta.zeta_prime_via_cesaro,
                          "zeta-prime-estimate")


def _cmd_cesaro_sum(args, fmt: str) -> int:
    spec = _build_sequence(args)
    ev = series.cesaro_sum(spec, k=args.order, n_terms=args.terms, tol=args.tol)
    inputs = {"sequence": args.sequence, "order": args.order,
              "terms": args.terms, "tol": args.tol}
    if args.ratio is not None:
        inputs["ratio"] = args.ratio
    if args.power is not None:
        inputs["power"] = args.power
    _emit(OutputRecord("cesaro-sum", inputs, {"float": ev.value}, _diag(ev)), fmt)
    if args.strict and not ev.converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _cmd_cesaro_int(args, fmt: str) -> int:
    spec = _build_integrand(args)
    ev = integral.cesaro_integral(spec, k=args.order,
                                  X_grid=_grid_to(args.xmax), tol=args.tol)
    inputs = {"integrand": args.integrand, "order": args.order,
              "xmax": args.xmax, "tol": args.tol}
    if args.integrand in ("sin", "cos"):
        inputs["freq"] = args.freq
    if args.integrand == "power-log":
        inputs["alpha"] = args.alpha
        inputs["logpow"] = args.logpow
    _emit(OutputRecord("cesaro-int", inputs, {"float": ev.value}, _diag(ev)), fmt)
    if args.strict and not ev.converged:
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _parse_rational(text: str) -> Optional[Fraction]:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        return None


def _cmd_fp_int(args, fmt: str) -> int:
    alpha = float(Fraction(args.alpha))
    upper = float(Fraction(args.upper))
    result = {"float": finite_part.fp_power_integral(alpha, upper)}
    a_frac = _parse_rational(args.alpha)
    b_frac = _parse_rational(args.upper)
    if a_frac is not None and b_frac is not None:
        try:
            result["exact"] = str(
                finite_part.fp_power_integral_exact(a_frac, b_frac))
        except ValueError:
            pass
    _emit(OutputRecord("fp-int", {"alpha": alpha, "upper": upper}, result), fmt)
    return EXIT_OK


def _cmd_fp_log_int(args, fmt: str) -> int:
    alpha = float(Fraction(args.alpha))
    upper = float(Fraction(args.upper))
    result = {"float": finite_part.fp_log_power_integral(alpha, upper)}
    a_frac = _parse_rational(args.alpha)
    if a_frac is not None and upper == 1.0:
        try:
            result["exact"] = str(
                finite_part.fp_log_power_integral_exact(a_frac))
        except ValueError:
            pass
    _emit(OutputRecord("fp-log-int", {"alpha": alpha, "upper": upper}, result),
          fmt)
    return EXIT_OK


# -- parser --------------------------------------------------------------------

def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "structured"),
                        default=None, help="output format (default from "
                        f"${FORMAT_ENV}, else text)")
    common.add_argument("--strict", action="store_true",
                        help="exit 2 when the evaluation did not converge")

    parser = argparse.ArgumentParser(
        prog="cesaro",
        description="Generalized summation: Cesaro limits, finite parts, "
                    "Bernoulli algebra, zeta special values.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("bernoulli", parents=[common],
                       help="exact Bernoulli number B_n")
    p.add_argument("n", type=int)
    p.set_defaults(handler=_cmd_bernoulli)

    p = sub.add_parser("faulhaber", parents=[common],
                       help="exact power sum 1^n + ... + (m-1)^n")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(handler=_cmd_faulhaber)

    p = sub.add_parser("zeta", parents=[common],
                       help="exact zeta(s) at integer s <= 0")
    p.add_argument("s", type=int)
    p.set_defaults(handler=_cmd_zeta)

    p = sub.add_parser("pm-poly", parents=[common],
                       help="periodic layer polynomial P_m for the staircase "
                            "of exponent n")
    p.add_argument("n", type=int)
    p.add_argument("m", type=int)
    p.set_defaults(handler=_cmd_pm_poly)

    for name, handler in (("zeta-estimate", _cmd_zeta_estimate),
                          ("zeta-prime-estimate", _cmd_zeta_prime_estimate)):
        p = sub.add_parser(name, parents=[common],
                           help=f"{'zeta' if name == 'zeta-estimate' else 'zeta-prime'}"
                                "(-alpha) from the staircase Cesaro limit")
        p.add_argument("--alpha", type=float, default=None)
        p.add_argument("--alpha-range", type=float, nargs=3, default=None,
                       metavar=("LO", "HI", "STEP"),
                       help="sweep alpha over an inclusive range")
        p.add_argument("--order", type=int, default=None,
                       help="Cesaro order k (default: max(0, ceil(alpha)+1))")
        p.add_argument("--xmax", type=float, default=zeta.DEFAULT_XMAX)
        p.add_argument("--tol", type=float, default=zeta.DEFAULT_TOL)
        p.set_defaults(handler=handler)

    p = sub.add_parser("cesaro-sum", parents=[common],
                       help="Cesaro (C,k) sum of a built-in sequence")
    p.add_argument("sequence", choices=("alt-sign", "alt-sign-n", "geometric",
                                        "power"))
    p.add_argument("--ratio", type=float, default=None,
                   help="ratio for the geometric sequence")
    p.add_argument("--power", type=float, default=None,
                   help="exponent for the power sequence (terms start at n=1)")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--terms", type=int, default=10_000)
    p.add_argument("--tol", type=float, default=series.DEFAULT_TOL)
    p.set_defaults(handler=_cmd_cesaro_sum)

    p = sub.add_parser("cesaro-int", parents=[common],
                       help="Cesaro (C,k) mean of a built-in integrand")
    p.add_argument("integrand", choices=("sin", "cos", "exp-decay", "power-log"))
    p.add_argument("--freq", type=float, default=1.0,
                   help="angular frequency for sin/cos")
    p.add_argument("--alpha", type=float, default=0.0,
                   help="exponent for power-log (must be > -1)")
    p.add_argument("--logpow", type=int, default=0,
                   help="log power for power-log")
    p.add_argument("--order", type=int, default=1)
    p.add_argument("--xmax", type=float, default=1e5)
    p.add_argument("--tol", type=float, default=integral.DEFAULT_TOL)
    p.set_defaults(handler=_cmd_cesaro_int)

    p = sub.add_parser("fp-int", parents=[common],
                       help="finite part of int_0^b t^alpha dt")
    p.add_argument("--alpha", required=True,
                   help="exponent (rational like -3/2 keeps the exact path)")
    p.add_argument("--upper", default="1", help="upper limit b (default 1)")
    p.set_defaults(handler=_cmd_fp_int)

    p = sub.add_parser("fp-log-int", parents=[common],
                       help="finite part of int_0^b t^alpha ln t dt")
    p.add_argument("--alpha", required=True)
    p.add_argument("--upper", default="1")
    p.set_defaults(handler=_cmd_fp_log_int)

    return parser


def run(argv) -> int:
    """Parse argv, dispatch, print records; returns the process exit code."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help and 2 for usage errors; fold the
        # latter into this tool's usage-error code.
        return EXIT_OK if exc.code == 0 else EXIT_USAGE

    fmt = args.format
    if fmt is None:
        fmt = os.environ.get(FORMAT_ENV, "text")
        if fmt not in ("text", "structured"):
            log.warning("ignoring %s=%r (want text|structured)", FORMAT_ENV, fmt)
            fmt = "text"

    try:
        return args.handler(args, fmt)
    except (ValueError, OverflowError, ZeroDivisionError,
            integral.QuadratureError, finite_part.IllConditionedFitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> int:
    logging.basicConfig(stream=sys.stderr, format="%(levelname)s %(message)s")
    return run(sys.argv[1:])


if __name__ == "__main__":
    sys.exit(main())
