"""Command-line interface.

Exit codes: 0 success, 1 ``check`` mismatch, 2 usage error, 3 computation error.
"""

import argparse
import sys

from bitorbit.bitword import BitWord, first_disagreement
from bitorbit.errors import BitOrbitError
from bitorbit.orbit import build_orbit
from bitorbit.pascal import parity_row, pascal_row_exact
from bitorbit.parser import parse_expr
from bitorbit.periodicity import certificate_for_evp, detect_period, orbit_witness_from_period
from bitorbit.render import render_arrowhead_svg, render_orbit_pbm
from bitorbit.streams import EvP, materialize
from bitorbit.transducer import delta_fst, parse_transducer, run

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_COMPUTE = 0, 1, 2, 3

MAX_LEN = 1 << 26
MAX_DIM = 1 << 15
MAX_D = 1 << 12


def _ranged(lo, hi):
    def parse(text):
        try:
            value = int(text)
        except ValueError:
            raise argparse.ArgumentTypeError("not an integer: %r" % text) from None
        if not lo <= value <= hi:
            raise argparse.ArgumentTypeError("%d is outside [%d, %d]" % (value, lo, hi))
        return value
    return parse


def _expr(text):
    try:
        return parse_expr(text)
    except BitOrbitError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _bits(text):
    try:
        return BitWord.from_text(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _write(out, data):
    if out in (None, "-"):
        sys.stdout.buffer.write(data)
        sys.stdout.buffer.flush()
    else:
        with open(out, "wb") as fh:
            fh.write(data)


def cmd_eval(args):
    print(materialize(args.expr, args.len).to_text())
    return EXIT_OK


def cmd_orbit(args):
    m = build_orbit(args.expr, args.d, args.rows, args.cols)
    _write(args.out, render_orbit_pbm(m))
    return EXIT_OK


def cmd_check(args):
    a = materialize(args.expr1, args.len)
    b = materialize(args.expr2, args.len)
    k = first_disagreement(a, b)
    if k is None:
        print("agree on %d bits" % args.len)
        return EXIT_OK
    print("first disagreement at index %d" % k)
    return EXIT_MISMATCH


def cmd_detect(args):
    cert = detect_period(materialize(args.expr, args.len), args.max_period, args.max_offset)
    print("none" if cert is None else cert.to_text())
    return EXIT_OK


def cmd_witness(args):
    if not isinstance(args.expr, EvP):
        raise BitOrbitError("witness needs an evp(...) expression")
    cert = certificate_for_evp(args.expr)
    print(orbit_witness_from_period(args.expr, cert, args.d, args.window).to_text())
    return EXIT_OK


def cmd_pascal(args):
    if args.parity:
        print(parity_row(args.d, args.row).to_text())
    else:
        print(pascal_row_exact(args.d, args.row).to_text())
    return EXIT_OK


def cmd_fst(args):
    if args.fst_command == "delta":
        t = delta_fst()
    else:
        with open(args.file) as fh:
            t = parse_transducer(fh.read())
    print(run(t, args.input).to_text())
    return EXIT_OK


def cmd_arrowhead(args):
    _write(args.out, render_arrowhead_svg(materialize(args.expr, args.steps)))
    return EXIT_OK


def build_parser():
    p = argparse.ArgumentParser(prog="bitorbit", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)
    length = _ranged(0, MAX_LEN)

    s = sub.add_parser("eval", help="print the first N bits of EXPR")
    s.add_argument("expr", type=_expr)
    s.add_argument("--len", type=length, required=True)
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("orbit", help="write the orbit fingerprint of EXPR as PBM")
    s.add_argument("expr", type=_expr)
    s.add_argument("--d", type=_ranged(0, MAX_D), default=1)
    s.add_argument("--rows", type=_ranged(1, MAX_DIM), required=True)
    s.add_argument("--cols", type=_ranged(1, MAX_DIM), required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_orbit)

    s = sub.add_parser("check", help="compare two expressions on N bits")
    s.add_argument("expr1", type=_expr)
    s.add_argument("expr2", type=_expr)
    s.add_argument("--len", type=length, required=True)
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("detect", help="look for an eventual period in the first N bits")
    s.add_argument("expr", type=_expr)
    s.add_argument("--len", type=length, required=True)
    s.add_argument("--max-period", type=_ranged(1, MAX_LEN), required=True)
    s.add_argument("--max-offset", type=_ranged(0, MAX_LEN), required=True)
    s.set_defaults(func=cmd_detect)

    s = sub.add_parser("witness", help="vertical period of the orbit of an evp stream")
    s.add_argument("expr", type=_expr)
    s.add_argument("--d", type=_ranged(0, MAX_D), default=1)
    s.add_argument("--window", type=_ranged(1, MAX_LEN), required=True)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("pascal", help="row of a generalized Pascal triangle")
    s.add_argument("--d", type=_ranged(0, MAX_D), required=True)
    s.add_argument("--row", type=_ranged(0, MAX_LEN), required=True)
    s.add_argument("--parity", action="store_true", help="print the row mod 2 as bits")
    s.set_defaults(func=cmd_pascal)

    s = sub.add_parser("fst", help="run a transducer")
    fst = s.add_subparsers(dest="fst_command", required=True)
    r = fst.add_parser("run", help="run the transducer in FILE")
    r.add_argument("file")
    r.add_argument("--input", type=_bits, required=True)
    r.set_defaults(func=cmd_fst)
    r = fst.add_parser("delta", help="run the first-difference transducer")
    r.add_argument("--input", type=_bits, required=True)
    r.set_defaults(func=cmd_fst)

    s = sub.add_parser("arrowhead", help="write the turtle curve of the first N bits as SVG")
    s.add_argument("expr", type=_expr)
    s.add_argument("--steps", type=_ranged(0, 1 << 22), required=True)
    s.add_argument("--out", default="-")
    s.set_defaults(func=cmd_arrowhead)
    return p


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except (BitOrbitError, OSError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
