"""Command line interface: ``paramcat eval|check|laws|lattice``.

Exit codes: 0 success, 1 parse error, 2 dimension error, 3 arity error,
4 inequivalent, 5 law failure, 6 lattice validation failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import circuit, lattice
from .core import ArityError, ParamSpace
from .laws import check_laws
from .matrix import (MatrixBackend, SwappedTensorBackend, format_matrix,
                     matrix_record, normalize_phase)

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_DIM = 2
EXIT_ARITY = 3
EXIT_INEQUIV = 4
EXIT_LAWS = 5
EXIT_LATTICE = 6


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _emit(obj, fmt, text, out):
    if fmt == "json":
        out.write(json.dumps(obj, sort_keys=True) + "\n")
    else:
        out.write(text if text.endswith("\n") else text + "\n")


def parse_theta(raw: str) -> tuple:
    raw = raw.strip()
    if not raw:
        return ()
    try:
        return tuple(float(x) for x in raw.split(","))
    except ValueError:
        raise CliError(f"--theta must be comma-separated numbers, got {raw!r}",
                       EXIT_ARITY) from None


def _load(path):
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    try:
        prog = circuit.parse(text)
    except circuit.CircuitSyntaxError as exc:
        raise CliError(f"{path}:{exc}", EXIT_PARSE) from None
    try:
        return prog, circuit.elaborate(prog)
    except circuit.DimensionError as exc:
        raise CliError(f"{path}:{exc}", EXIT_DIM) from None
    except circuit.CircuitError as exc:
        raise CliError(f"{path}:{exc}", EXIT_PARSE) from None


def cmd_eval(args, out) -> int:
    prog, fam = _load(args.file)
    theta = parse_theta(args.theta)
    try:
        m = fam(theta)
    except ArityError as exc:
        raise CliError(str(exc), EXIT_ARITY) from None
    _emit({"command": "eval", "theta": list(theta), "matrix": matrix_record(m)},
          args.format, format_matrix(m), out)
    return EXIT_OK


def cmd_check(args, out) -> int:
    prog_a, fa = _load(args.file_a)
    prog_b, fb = _load(args.file_b)
    if prog_a.params != prog_b.params:
        raise CliError(f"params headers differ ({prog_a.params} vs "
                       f"{prog_b.params})", EXIT_ARITY)
    normalize = normalize_phase if args.phase_invariant else None
    v = fa.category.check_equiv(fa, fb, args.samples, args.seed, args.tol,
                                normalize)
    if v.status == "equivalent":
        text = (f"equivalent ({v.samples} points, max deviation "
                f"{v.max_deviation:.3e}, tol {v.tol:g})")
        code = EXIT_OK
    elif v.status == "inequivalent":
        pt = ",".join(f"{c:.17g}" for c in v.counterexample)
        text = (f"inequivalent: deviation {v.deviation:.6e} > tol {v.tol:g} "
                f"at theta=({pt})")
        code = EXIT_INEQUIV
    else:
        text = f"dimension mismatch: {v.reason}"
        code = EXIT_DIM
    rec = {"command": "check", "phase_invariant": bool(args.phase_invariant),
           "seed": args.seed, **v.to_dict()}
    _emit(rec, args.format, text, out)
    return code


def cmd_laws(args, out) -> int:
    backend = SwappedTensorBackend() if args.corrupt_tensor else MatrixBackend()
    report = check_laws(ParamSpace(args.arity), backend, args.trials,
                        args.seed, args.tol, args.max_dim)
    rec = {"command": "laws", **report.to_dict()}
    _emit(rec, args.format, report.to_text(), out)
    return EXIT_OK if report.passed else EXIT_LAWS


def cmd_lattice(args, out) -> int:
    try:
        lat, graph = lattice.load_spec(args.spec)
    except OSError as exc:
        raise CliError(str(exc), EXIT_PARSE) from None
    except lattice.LatticeError as exc:
        detail = "".join(f"\n  {v}" for v in exc.violations)
        raise CliError(f"{args.spec}: {exc}{detail}", EXIT_LATTICE) from None
    level = args.level if args.level is not None else lat.top
    try:
        edges = lattice.param_graph(lat, graph, level)
    except lattice.LatticeError as exc:
        detail = "".join(f"\n  {v}" for v in exc.violations)
        raise CliError(f"{args.spec}: {exc}{detail}", EXIT_LATTICE) from None
    rec = {"command": "lattice", "level": level,
           "edges": [list(e) for e in edges]}
    _emit(rec, args.format, lattice.format_edges(edges), out)
    return EXIT_OK


def _positive_int(s):
    v = int(s)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(s):
    v = float(s)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="paramcat",
        description="Evaluate and compare parameterized circuits, run the "
                    "Param law suite, and query lattice entailment graphs.")
    fmt = argparse.ArgumentParser(add_help=False)
    fmt.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", parents=[fmt],
                       help="evaluate a circuit at a parameter point")
    e.add_argument("file")
    e.add_argument("--theta", default="",
                   help="comma-separated radians, e.g. 1.57,0")
    e.set_defaults(func=cmd_eval)

    c = sub.add_parser("check", parents=[fmt],
                       help="sample-based equivalence of two circuits")
    c.add_argument("file_a")
    c.add_argument("file_b")
    c.add_argument("--samples", type=_positive_int, default=100)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--tol", type=_positive_float, default=1e-10)
    c.add_argument("--phase-invariant", action="store_true",
                   help="ignore a global phase")
    c.set_defaults(func=cmd_check)

    lw = sub.add_parser("laws", parents=[fmt],
                        help="run the law suite on the matrix backend")
    lw.add_argument("--trials", type=_positive_int, default=25)
    lw.add_argument("--seed", type=int, default=0)
    lw.add_argument("--tol", type=float, default=1e-10)
    lw.add_argument("--max-dim", type=_positive_int, default=4)
    lw.add_argument("--arity", type=int, default=2)
    lw.add_argument("--corrupt-tensor", action="store_true",
                    help=argparse.SUPPRESS)
    lw.set_defaults(func=cmd_laws)

    la = sub.add_parser("lattice", parents=[fmt],
                        help="edges entailed by a truth value")
    la.add_argument("spec")
    la.add_argument("--level", default=None,
                    help="lattice element (default: top)")
    la.set_defaults(func=cmd_lattice)
    return p


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        err.write(f"error: {exc}\n")
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
