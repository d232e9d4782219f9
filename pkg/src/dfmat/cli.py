"""``stp`` command-line front end.

Operands are matrix JSON files (``-`` reads stdin).  Results go to stdout as
JSON (matrices, reports), plain text (scalars, booleans) or DOT (Hasse
diagrams).  Domain errors exit 1 with ``{"code", "message"}`` JSON on
stderr; usage errors exit 2.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from dfmat import equivalence as eq
from dfmat import lie
from dfmat import quotient as q
from dfmat.errors import DfmError
from dfmat.matrix_core import EXACT, FLOAT, Matrix, matrix_from_json, matrix_to_dict, scalar_to_json
from dfmat.multipliers import family_by_name, verify_multiplier_axioms
from dfmat.selfcheck import FAIL, format_table, run_selfcheck
from dfmat.stp import LEFT, RIGHT, StpVariant, stp_add, stp_mul, stp_sub

SIDES = {"l": LEFT, "r": RIGHT}


class CliError(Exception):
    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message


def _common() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--gamma", choices=["id", "mean", "tl", "br"], default="id", help="multiplier family")
    p.add_argument("--side", choices=["l", "r"], default="l", help="left or right product / equivalence")
    p.add_argument("--mode", choices=[EXACT, FLOAT], default=None, help="force the scalar mode of operands")
    p.add_argument("--tol", type=float, default=None, help="float tolerance override")
    p.add_argument("--output", choices=["json", "dot", "plain"], default=None)
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = argparse.ArgumentParser(prog="stp", description="Dimension-free matrix algebra.")
    sub = parser.add_subparsers(dest="verb", required=True)

    for verb in ("mul", "add", "sub"):
        p = sub.add_parser(verb, parents=[common], help=f"semi-tensor {verb}")
        p.add_argument("a")
        p.add_argument("b")

    p = sub.add_parser("equiv", parents=[common], help="test Γ-equivalence")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("minrep", parents=[common], help="minimal representative")
    p.add_argument("a")
    p = sub.add_parser("lattice", parents=[common], help="lattice bounds of two equivalent matrices")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("hasse", parents=[common], help="Hasse diagram (DOT) of equivalent matrices")
    p.add_argument("elements", nargs="+")

    p = sub.add_parser("class", parents=[common], help="operations on equivalence classes")
    p.add_argument("op", choices=["minrep", "add", "sub", "mul", "transpose", "inverse", "exp",
                                  "equivalent", "similar", "congruent"])
    p.add_argument("operands", nargs="+")

    p = sub.add_parser("bracket", parents=[common], help="Lie bracket of two square classes")
    p.add_argument("a")
    p.add_argument("b")
    p = sub.add_parser("trace", parents=[common], help="dimension-free trace")
    p.add_argument("a")
    p = sub.add_parser("ad", parents=[common], help="adjoint matrix I⊗A - A^T⊗I")
    p.add_argument("a")
    p.add_argument("--class", dest="as_class", action="store_true", help="return the minimal representative of <ad_A>")
    p = sub.add_parser("killing", parents=[common], help="Killing form of two square classes")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--check", action="store_true", help="cross-check against the explicit adjoint product")
    p = sub.add_parser("member", parents=[common], help="subalgebra membership")
    p.add_argument("--subalgebra", required=True, help="'sl' or 'stab:FILE'")
    p.add_argument("a")

    p = sub.add_parser("verify-gamma", parents=[common], help="check the multiplier axioms")
    p.add_argument("--max-n", type=int, default=4)
    p = sub.add_parser("selfcheck", parents=[common], help="run the built-in invariant suites")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--samples", type=int, default=12)
    return parser


def _read(path: str, mode: str | None) -> Matrix:
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except FileNotFoundError:
        raise CliError("file_not_found", f"no such file: {path}") from None
    except OSError as exc:
        raise CliError("io_error", f"cannot read {path}: {exc}") from None
    return matrix_from_json(text, mode)


def _scalar_text(v) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return repr(float(v))


def _matrix_text(m: Matrix) -> str:
    cells = [[_scalar_text(v) for v in m.row(i)] for i in range(m.rows)]
    width = max(len(c) for r in cells for c in r)
    return "\n".join(" ".join(c.rjust(width) for c in r) for r in cells)


def _emit(payload, output: str) -> str:
    if isinstance(payload, Matrix):
        return _matrix_text(payload) if output == "plain" else json.dumps(matrix_to_dict(payload))
    if isinstance(payload, bool):
        return "true" if payload else "false"
    if isinstance(payload, (Fraction, float, int)):
        return _scalar_text(payload) if output == "plain" else json.dumps(scalar_to_json(payload))
    if isinstance(payload, str):
        return payload.rstrip("\n")
    return json.dumps(payload, indent=None)


def _kind(args) -> eq.EquivalenceKind:
    return eq.EquivalenceKind(SIDES[args.side], family_by_name(args.gamma))


def _dispatch(args) -> tuple[object, str, int]:
    """Return (payload, default output format, exit code)."""
    mode = args.mode
    read = lambda path: _read(path, mode)  # noqa: E731
    verb = args.verb

    if verb in ("mul", "add", "sub"):
        v = StpVariant(SIDES[args.side], family_by_name(args.gamma))
        fn = {"mul": stp_mul, "add": stp_add, "sub": stp_sub}[verb]
        return fn(v, read(args.a), read(args.b)), "json", 0
    if verb == "equiv":
        return eq.are_equivalent(read(args.a), read(args.b), _kind(args), args.tol), "plain", 0
    if verb == "minrep":
        lam, d = eq.minimal_representative(read(args.a), _kind(args), args.tol)
        return {"rep": matrix_to_dict(lam), "factor": d}, "json", 0
    if verb == "lattice":
        lp = eq.lattice_bounds(read(args.a), read(args.b), _kind(args))
        return {
            "theta": matrix_to_dict(lp.theta),
            "lambda": matrix_to_dict(lp.lam),
            "alpha": lp.alpha,
            "beta": lp.beta,
        }, "json", 0
    if verb == "hasse":
        return eq.hasse_dot([read(p) for p in args.elements], _kind(args)), "dot", 0
    if verb == "class":
        return _class_op(args, read)
    if verb == "bracket":
        return lie.bracket(q.class_of(read(args.a)), q.class_of(read(args.b))).rep, "json", 0
    if verb == "trace":
        return lie.df_trace(read(args.a), family_by_name(args.gamma)), "plain", 0
    if verb == "ad":
        a = read(args.a)
        if args.as_class:
            return lie.class_ad(q.class_of(a)).rep, "json", 0
        return lie.ad_matrix(a), "json", 0
    if verb == "killing":
        x, y = q.class_of(read(args.a)), q.class_of(read(args.b))
        return lie.killing_form(x, y, check=args.check or None), "plain", 0
    if verb == "member":
        spec = args.subalgebra
        if spec == "sl":
            sa = lie.SL
        elif spec.startswith("stab:"):
            sa = lie.stabilizer(q.class_of(read(spec[5:])))
        else:
            raise CliError("usage", f"unknown subalgebra {spec!r}; use 'sl' or 'stab:FILE'")
        return lie.subalgebra_contains(sa, q.class_of(read(args.a))), "plain", 0
    if verb == "verify-gamma":
        report = verify_multiplier_axioms(family_by_name(args.gamma), args.max_n)
        text = "\n".join([f"family {report.family}"] + report.lines())
        payload = report.to_dict() if args.output == "json" else text
        return payload, "plain", 0 if report.passed else 1
    if verb == "selfcheck":
        results = run_selfcheck(seed=args.seed, samples=args.samples, tol=args.tol if args.tol is not None else 1e-10)
        failed = any(r.status == FAIL for r in results)
        if args.output == "json":
            payload = [vars(r) for r in results]
        else:
            payload = format_table(results)
        return payload, "plain", 1 if failed else 0
    raise CliError("usage", f"unknown verb {verb!r}")  # pragma: no cover


def _class_op(args, read):
    op, operands = args.op, args.operands
    arity = {"minrep": 1, "transpose": 1, "inverse": 1, "exp": 1}.get(op, 2)
    if len(operands) != arity:
        raise CliError("usage", f"class {op} takes {arity} operand(s), got {len(operands)}")
    xs = [q.class_of(read(p), args.tol) for p in operands]
    if op == "minrep":
        return xs[0].rep, "json", 0
    if op == "add":
        return q.class_add(*xs).rep, "json", 0
    if op == "sub":
        return q.class_sub(*xs).rep, "json", 0
    if op == "mul":
        return q.class_mul(*xs).rep, "json", 0
    if op == "transpose":
        return q.class_transpose(xs[0]).rep, "json", 0
    if op == "inverse":
        return q.class_inverse(xs[0]).rep, "json", 0
    if op == "exp":
        return q.class_exp(xs[0], args.tol).rep, "json", 0
    if op == "equivalent":
        return q.classes_equivalent(*xs), "plain", 0
    if op == "similar":
        return q.classes_similar(*xs), "plain", 0
    return q.classes_congruent(*xs), "plain", 0


def _fail(code: str, message: str) -> int:
    print(json.dumps({"code": code, "message": message}), file=sys.stderr)
    return 1


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        payload, default_output, code = _dispatch(args)
    except CliError as exc:
        if exc.code == "usage":
            parser.print_usage(sys.stderr)
            print(f"stp: error: {exc.message}", file=sys.stderr)
            return 2
        return _fail(exc.code, exc.message)
    except DfmError as exc:
        return _fail(exc.code, str(exc))
    except ValueError as exc:
        return _fail("invalid_argument", str(exc))
    print(_emit(payload, args.output or default_output))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
