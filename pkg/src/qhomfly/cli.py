"""Command-line front end.

Exit codes: 0 success, 1 computation error, 2 usage error, 3 self-test failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .algebra import LinkPoly, render_laurent, render_linkpoly, render_ratfunc
from .analysis import bounds, head, slopes
from .diagram import BraidParseError, parse_braid
from .oracles import t2_formula
from .qehrhart import (
    EhrhartPoly,
    ehrhart,
    evaluate_at_N,
    evaluate_ehrhart,
    load_poset,
    polytope_dim,
    reciprocity_check,
    weighted_count,
)
from .selftest import run_selftest
from .statesum import BDependenceError, HomflyConfig, ResolutionLimitError, antisym_homfly, colored_homfly

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_USAGE = 2
EXIT_SELFTEST = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _positive(name: str):
    def conv(text: str) -> int:
        try:
            v = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError(f"{name} must be an integer, got {text!r}")
        if v < 1:
            raise argparse.ArgumentTypeError(f"{name} must be at least 1, got {text!r}")
        return v
    return conv


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="qhomfly", description="Colored HOMFLY polynomials from q-Ehrhart state sums.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def braid_cmd(name: str, help_text: str) -> argparse.ArgumentParser:
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--braid", required=True, help='braid word, e.g. "1 1 -2" or "3: a b A"')
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--workers", type=_positive("--workers"), default=1)
        return sp

    ev = braid_cmd("eval", "evaluate P_r (or P_{r^t} with --antisymmetric)")
    ev.add_argument("--color", type=_positive("--color"), required=True)
    ev.add_argument("--antisymmetric", action="store_true")

    eh = sub.add_parser("ehrhart", help="q-Ehrhart polynomial of an order polytope")
    eh.add_argument("--poset", required=True, help="poset JSON file")
    eh.add_argument("--check-reciprocity", type=_positive("--check-reciprocity"), metavar="N")
    eh.add_argument("--check-b-independence", action="store_true")
    eh.add_argument("--format", choices=("text", "json"), default="text")

    bd = braid_cmd("bounds", "compare degree bounds with actual degrees")
    bd.add_argument("--color", type=_positive("--color"), required=True)

    hd = braid_cmd("head", "normalized head of a positive braid closure")
    hd.add_argument("--color", type=_positive("--color"), required=True)
    hd.add_argument("--no-prune", action="store_true")

    sl = braid_cmd("slopes", "r^-2 maxdeg_q P_r for r = 1..R")
    sl.add_argument("--max-color", type=_positive("--max-color"), required=True)

    orc = sub.add_parser("oracle", help="independent reference formulas")
    osub = orc.add_subparsers(dest="oracle", parser_class=_Parser)
    osub.required = True
    t2 = osub.add_parser("t2", help="closed formula for T(2, c)")
    t2.add_argument("--c", type=int, required=True)
    t2.add_argument("--color", type=_positive("--color"), required=True)
    t2.add_argument("--format", choices=("text", "json"), default="text")

    st = sub.add_parser("selftest", help="run the acceptance matrix")
    st.add_argument("--deep", action="store_true")
    return p


def _braid(text: str):
    try:
        return parse_braid(text)
    except BraidParseError as exc:
        raise UsageError(f"bad braid word {text!r}: {exc}")


def _emit_poly(p: LinkPoly, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(p.to_json()) + "\n")
    else:
        out.write(render_linkpoly(p) + "\n")


def _render_ehrhart(E: EhrhartPoly) -> str:
    parts = []
    for e, part in E.terms:
        for i, c in part:
            b = "1" if i == 1 else f"binom(b+{i - 1},{i - 1})"
            parts.append(f"({render_ratfunc(c)})*{b}*a^{e}")
    return " + ".join(parts) if parts else "0"


def _ehrhart_json(E: EhrhartPoly) -> list:
    return [{"a_exp": e, "i": i, "coeff": LinkPoly.from_ratfunc(c).to_json()} for e, part in E.terms for i, c in part]


def _cmd_eval(args, out) -> int:
    b = _braid(args.braid)
    cfg = HomflyConfig(workers=args.workers)
    if args.antisymmetric:
        p = antisym_homfly(b, args.color, cfg)
    else:
        p = colored_homfly(b, args.color, cfg)
    _emit_poly(p, args.format, out)
    return EXIT_OK


def _cmd_ehrhart(args, out) -> int:
    try:
        with open(args.poset) as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read poset file {args.poset!r}: {exc.strerror}")
    try:
        P, lam = load_poset(text)
    except (ValueError, KeyError, TypeError) as exc:
        raise UsageError(f"bad poset file {args.poset!r}: {exc}")
    E = ehrhart(P, lam)
    report = {"E": _ehrhart_json(E)} if args.format == "json" else None
    lines = [f"E = {_render_ehrhart(E)}"]
    status = EXIT_OK
    if args.check_reciprocity:
        N = args.check_reciprocity
        W = evaluate_at_N(E, N)
        interior = weighted_count(P, lam, N, interior=True)
        ok = reciprocity_check(P, lam, N, E)
        recip = evaluate_ehrhart(E, (0, 2 * N), -N, q_inverse=True)
        lines.append(f"W({N}) = {render_laurent(W)}")
        lines.append(f"interior W({N}) = {render_laurent(interior)}")
        lines.append(f"E(q^{N}, -{N}, 1/q) = {render_linkpoly(recip)}  (dim {polytope_dim(P)})")
        lines.append(f"reciprocity: {'ok' if ok else 'FAILED'}")
        if report is not None:
            report.update({"N": N, "W": W.to_pairs(), "interior_W": interior.to_pairs(), "reciprocity": ok})
        if not ok:
            status = EXIT_COMPUTE
    if args.check_b_independence:
        dep = E.depends_on_b()
        lines.append(f"b-independence: {'no' if dep else 'ok'}")
        if report is not None:
            report["b_independent"] = not dep
    if report is not None:
        out.write(json.dumps(report) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return status


def _cmd_bounds(args, out) -> int:
    b = _braid(args.braid)
    rep = bounds(b, args.color, config=HomflyConfig(workers=args.workers))
    if args.format == "json":
        out.write(json.dumps(rep.to_json()) + "\n")
    else:
        for k, v in rep.to_json().items():
            out.write(f"{k}: {v}\n")
    return EXIT_OK if rep.satisfied else EXIT_COMPUTE


def _cmd_head(args, out) -> int:
    b = _braid(args.braid)
    if not b.is_positive():
        raise UsageError(f"head needs a positive braid word, got {args.braid!r}")
    prune = not args.no_prune and all(b.letters.count(k) >= 2 for k in set(b.letters))
    rep = head(b, args.color, prune=prune, config=HomflyConfig(workers=args.workers))
    data = rep.to_json()
    if args.format == "json":
        out.write(json.dumps(data) + "\n")
    else:
        out.write(f"d_r = {data['d_r']}  f_r = {data['f_r']}  lead = {data['lead']}\n")
        for k, s in enumerate(data["head"]):
            out.write(f"q^-{k}: {s}\n")
        if rep.prune_verified:
            out.write("prune: identical to unpruned\n")
        elif not args.no_prune:
            out.write("prune: skipped, some generator occurs only once\n")
    return EXIT_OK


def _cmd_slopes(args, out) -> int:
    b = _braid(args.braid)
    rep = slopes(b, args.max_color, HomflyConfig(workers=args.workers))
    data = rep.to_json()
    if args.format == "json":
        out.write(json.dumps(data) + "\n")
    else:
        for e in data["entries"]:
            out.write(f"r={e['r']}  maxdeg_q={e['maxdeg_q']}  ratio={e['ratio']}\n")
        out.write("differences: " + ", ".join(data["differences"]) + "\n")
    return EXIT_OK


def _cmd_oracle(args, out) -> int:
    _emit_poly(t2_formula(args.c, args.color), args.format, out)
    return EXIT_OK


def _cmd_selftest(args, out) -> int:
    checks = run_selftest(deep=args.deep)
    for c in checks:
        out.write(c.line() + "\n")
    return EXIT_OK if all(c.ok for c in checks) else EXIT_SELFTEST


COMMANDS = {
    "eval": _cmd_eval,
    "ehrhart": _cmd_ehrhart,
    "bounds": _cmd_bounds,
    "head": _cmd_head,
    "slopes": _cmd_slopes,
    "oracle": _cmd_oracle,
    "selftest": _cmd_selftest,
}


def run(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n  input: {' '.join(argv)}\n")
        return EXIT_USAGE
    except (ResolutionLimitError, BDependenceError, ArithmeticError, ValueError, AssertionError) as exc:
        err.write(f"computation error: {exc}\n  input: {' '.join(argv)}\n")
        return EXIT_COMPUTE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
