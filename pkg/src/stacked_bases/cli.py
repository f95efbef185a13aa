"""stacked-bases command line.

Exit status: 0 success, 1 domain error (unsupported ring/operation, failed
precondition, failed verification), 2 parse or usage error.
"""
import argparse
import os
import sys

from .errors import ParseError, StackedBasesError
from .literals import format_element, parse_ideal, parse_matrix, parse_ring
from .report import (Report, decompose_report, diagonal_report, fmt_ideal, stacked_report,
                     verification_report)

IDEAL_OPS = {
    "mul": 2, "add": 2, "intersect": 2, "colon": 2, "isomorphic": 2,
    "inverse": 1, "principal": 1, "faithful": 1, "completion": 1, "annihilator": 1,
    "norm": 1, "normal-form": 1,
}


class UsageError(Exception):
    pass


def _default_seed():
    raw = os.environ.get("STACKED_BASES_SEED", "1")
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"STACKED_BASES_SEED must be an integer, got {raw!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=None,
                        help="random seed (default: $STACKED_BASES_SEED or 1)")
    common.add_argument("--format", choices=("text", "machine"), default="text")
    common.add_argument("--out", help="write the report to this file")

    matrix = argparse.ArgumentParser(add_help=False)
    matrix.add_argument("--ring", required=True, help="Z, Z/n, Q[d] or prod(...)")
    src = matrix.add_mutually_exclusive_group(required=True)
    src.add_argument("--matrix", help='inline matrix literal, e.g. "2,0;0,3"')
    src.add_argument("--input", help="file holding a matrix literal (UTF-8)")

    p = argparse.ArgumentParser(prog="stacked-bases",
                                description="Module decompositions and stacked bases over test rings.")
    sub = p.add_subparsers(dest="command", required=True)
    sub.add_parser("decompose", parents=[common, matrix],
                   help="decompose R^n / (column span of the matrix)")
    sub.add_parser("diagonalize", parents=[common, matrix], help="P A Q = D with d1 | d2 | ...")
    sub.add_parser("stacked", parents=[common, matrix], help="stacked bases for the column span")
    sub.add_parser("verify", parents=[common, matrix], help="run all verifiers on one input")
    ideal = sub.add_parser("ideal", parents=[common], help="ideal arithmetic")
    ideal.add_argument("--ring", required=True)
    ideal.add_argument("op", choices=sorted(IDEAL_OPS))
    ideal.add_argument("ideals", nargs="+", help='ideal literals, e.g. "ideal(2,1+1*w)"')
    st = sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    st.add_argument("--scope", choices=("fast", "full"), default="fast")
    return p


def _read_matrix(args, R):
    if args.input is not None:
        try:
            with open(args.input, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise ParseError(f"cannot read {args.input}: {exc}")
    else:
        text = args.matrix
    return parse_matrix(text, R)


def cmd_decompose(args):
    from .decomposition import PresentedModule, decompose
    R = parse_ring(args.ring)
    H = _read_matrix(args, R)
    mod = PresentedModule(R, H.nrows, H)
    D = decompose(mod)
    rep = decompose_report(mod, D)
    return rep, 0


def cmd_diagonalize(args):
    from .diagonal import diagonalize
    R = parse_ring(args.ring)
    A = _read_matrix(args, R)
    return diagonal_report(diagonalize(A)), 0


def cmd_stacked(args):
    from .stacked import stacked_bases
    R = parse_ring(args.ring)
    H = _read_matrix(args, R)
    return stacked_report(H.nrows, H, stacked_bases(H.nrows, H)), 0


def cmd_verify(args):
    from .decomposition import PresentedModule, decompose
    from .diagonal import diagonalize
    from .matrices import supports_bezout
    from .oracles import (verify_decomposition, verify_diagonal, verify_stacked,
                          verify_torsion_split)
    from .stacked import stacked_bases
    R = parse_ring(args.ring)
    H = _read_matrix(args, R)
    n = H.nrows
    reports = []
    sb = stacked_bases(n, H)
    reports.append(verify_stacked(n, H, sb, case_id="input"))
    if R.is_pp():
        mod = PresentedModule(R, n, H)
        D = decompose(mod)
        reports.append(verify_decomposition(mod, D, seed=args.seed, case_id="input"))
        reports.append(verify_torsion_split(mod, D, case_id="input"))
    if supports_bezout(R):
        reports.append(verify_diagonal(diagonalize(H), case_id="input"))
    rep = verification_report("verify", R, reports)
    return rep, 0 if all(r.passed for r in reports) else 1


def cmd_ideal(args):
    from . import ideals as I
    R = parse_ring(args.ring)
    want = IDEAL_OPS[args.op]
    if len(args.ideals) != want:
        raise UsageError(f"ideal {args.op} takes {want} ideal literal(s), got {len(args.ideals)}")
    A = [parse_ideal(s, R) for s in args.ideals]
    rep = Report("ideal", R)
    rep.add("op", args.op)
    for k, X in enumerate(A, 1):
        rep.add(f"input.{k}", fmt_ideal(X))
    op = args.op
    if op == "mul":
        rep.add("result", fmt_ideal(A[0] * A[1]))
    elif op == "add":
        rep.add("result", fmt_ideal(A[0] + A[1]))
    elif op == "intersect":
        rep.add("result", fmt_ideal(A[0].intersect(A[1])))
    elif op == "colon":
        rep.add("result", fmt_ideal(I.colon(A[0], A[1])))
    elif op == "annihilator":
        rep.add("result", fmt_ideal(I.annihilator(A[0])))
    elif op == "completion":
        rep.add("result", fmt_ideal(I.faithful_completion(A[0])))
    elif op == "norm":
        N = A[0].norm()
        rep.add("result", "infinite" if N is None else N)
    elif op == "normal-form":
        rep.add("result", fmt_ideal(A[0]))
    elif op == "inverse":
        inv = I.ideal_inverse(A[0])
        rep.add("numerator", fmt_ideal(inv.numerator))
        rep.add("denominator", format_element(inv.denominator))
    elif op == "principal":
        g = I.is_principal(A[0])
        rep.add("principal", "no" if g is None else "yes")
        if g is not None:
            rep.add("generator", format_element(g))
    elif op == "faithful":
        ok, w = I.is_faithful(A[0])
        rep.add("faithful", "yes" if ok else "no")
        if w is not None:
            rep.add("nonzerodivisor", format_element(w))
    elif op == "isomorphic":
        ok, wit = I.is_isomorphic(A[0], A[1])
        rep.add("isomorphic", "yes" if ok else "no")
        if ok:
            rep.add("witness.g", format_element(wit[0]))
            rep.add("witness.a", format_element(wit[1]))
    return rep, 0


def cmd_selftest(args):
    from .acceptance import run_suite
    results = run_suite(seed=args.seed, scope=args.scope)
    rep = Report("selftest", parse_ring("Z"))
    rep.items = [("command", "selftest"), ("scope", args.scope), ("seed", str(args.seed))]
    for r in results:
        rep.add(f"criterion.{r.number}", f"{'pass' if r.passed else 'fail'} "
                f"{r.passed_cases}/{r.cases} {r.name}")
    rep.add("status", "pass" if all(r.passed for r in results) else "fail")
    for r in results:
        for k, f in enumerate(r.failures, 1):
            rep.add_witness(f"criterion.{r.number}.{k}", f)
    # timings vary between runs, so they go to stderr rather than the report
    for r in results:
        print(r.line(), file=sys.stderr)
    return rep, 0 if all(r.passed for r in results) else 1


COMMANDS = {"decompose": cmd_decompose, "diagonalize": cmd_diagonalize, "stacked": cmd_stacked,
            "verify": cmd_verify, "ideal": cmd_ideal, "selftest": cmd_selftest}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.seed is None:
            args.seed = _default_seed()
        rep, status = COMMANDS[args.command](args)
    except (ParseError, UsageError) as exc:
        print(f"stacked-bases: parse error: {exc}", file=sys.stderr)
        return 2
    except StackedBasesError as exc:
        print(f"stacked-bases: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    text = rep.render(args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
