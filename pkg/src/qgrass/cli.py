"""Command line entry point.

Exit codes: 0 pass, 1 a check failed, 2 bad input or internal error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .tasks import TASKS, VerifyTask, run_task


def _common(p: argparse.ArgumentParser):
    p.add_argument("--n", type=int, default=2)
    p.add_argument("--r", type=int, default=1)
    p.add_argument("--order", type=int, default=2, help="(q-1)-adic truncation order N")
    p.add_argument("--deg", type=int, default=2, help="degree bound D")
    p.add_argument("--mode", choices=("GL", "SL"), default="GL")
    p.add_argument("--q-conv", choices=("standard", "inverted"), default="standard")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qgrass", description="Exact checks for quantum Grassmannians at small rank.")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("nf", help="normal form of an expression in x[i,j]")
    p.add_argument("expr")
    _common(p)

    p = sub.add_parser("qdet", help="the quantum determinant")
    _common(p)

    p = sub.add_parser("minor", help="a quantum minor, rows and columns as comma lists")
    p.add_argument("rows")
    p.add_argument("cols")
    _common(p)

    p = sub.add_parser("poisson", help="Poisson bracket of two commutative polynomials")
    p.add_argument("a")
    p.add_argument("b")
    _common(p)

    p = sub.add_parser("verify", help="run a verification task")
    p.add_argument("task", choices=TASKS + ("all",))
    p.add_argument("--timing", action="store_true", help="include wall time in JSON")
    _common(p)

    p = sub.add_parser("report", help="run every task and print one combined report")
    p.add_argument("--timing", action="store_true", help="include wall time in JSON")
    _common(p)
    return ap


def _emit(args, payload: dict, text: str):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(text)


def _comm_from_text(src: str, n: int, q_conv: str) -> dict:
    from .drinfeld import comm_poly
    from .parsing import ParseError, parse_expression

    p = parse_expression(src, n=n, q_conv=q_conv)
    out = {}
    for w, c in p.terms.items():
        if not (c.is_laurent() and c.num.is_monomial() and c.num.min_exp() == 0):
            raise ParseError("Poisson inputs take rational coefficients", src, 0)
        out[tuple(p.pres.keys[g] for g in w)] = Fraction(c.eval_at_one())
    return comm_poly(out)


def _cmd_nf(args) -> int:
    from .parsing import parse_expression

    p = parse_expression(args.expr, n=args.n, q_conv=args.q_conv, normalize=True)
    _emit(args, {"input": args.expr, "normal_form": str(p)}, str(p))
    return 0


def _cmd_qdet(args) -> int:
    from .hopf import quantum_determinant

    d = quantum_determinant(args.n, args.q_conv)
    _emit(args, {"n": args.n, "qdet": str(d)}, str(d))
    return 0


def _cmd_minor(args) -> int:
    from .minors import MinorIndex, quantum_minor

    rows = tuple(int(x) for x in args.rows.split(","))
    cols = tuple(int(x) for x in args.cols.split(","))
    m = quantum_minor(MinorIndex(rows, cols), n=args.n, q_conv=args.q_conv)
    _emit(args, {"rows": rows, "cols": cols, "minor": str(m)}, str(m))
    return 0


def _cmd_poisson(args) -> int:
    from .drinfeld import format_comm, poisson_bracket

    a = _comm_from_text(args.a, args.n, args.q_conv)
    b = _comm_from_text(args.b, args.n, args.q_conv)
    out = format_comm(poisson_bracket(a, b, args.n, args.q_conv))
    _emit(args, {"a": args.a, "b": args.b, "bracket": out}, out)
    return 0


def _task(args, name: str) -> VerifyTask:
    return VerifyTask(name, n=args.n, r=args.r, N=args.order, D=args.deg,
                      mode=args.mode, q_conv=args.q_conv, seed=args.seed)


def _cmd_verify(args, name=None) -> int:
    rep = run_task(_task(args, name or args.task))
    if args.json:
        print(rep.to_json(timing=args.timing))
    else:
        print(rep.to_text())
    return 0 if rep.passed else 1


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    handlers = {
        "nf": _cmd_nf,
        "qdet": _cmd_qdet,
        "minor": _cmd_minor,
        "poisson": _cmd_poisson,
        "verify": _cmd_verify,
        "report": lambda a: _cmd_verify(a, "all"),
    }
    try:
        return handlers[args.cmd](args)
    except (SyntaxError, KeyError, ValueError, IndexError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
