"""Command line front end.

Exit codes: 0 computed or PASS, 1 a check failed, 2 usage or capacity error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import checks
from .groups import GroupSpec, TooLarge
from .harmonics import (
    HarmonicQuery,
    harmonic_space,
    layer_decomposition,
    singular_scan,
)
from .operators import FORMAL
from .polyspace import NotSingleSet
from .series import NotSymmetric, format_hbasis, format_series, hbasis_expression

log = logging.getLogger("qharmonic")


class UsageError(ValueError):
    pass


def _qmode(text: str):
    if text == FORMAL:
        return FORMAL
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"--q must be 'formal' or a rational A/B, got {text!r}")


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def _nonneg(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return v


def _group_args(p: argparse.ArgumentParser, sets=True, pflag=True):
    p.add_argument("--m", type=_positive, required=True)
    if pflag:
        p.add_argument("--p", type=_positive, default=1)
    p.add_argument("--n", type=_positive, required=True)
    if sets:
        p.add_argument("--sets", type=_positive, default=1)
    p.add_argument("--max-deg", type=_nonneg, default=None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qharmonic",
                                 description="q-harmonic polynomials of G(m,p,n)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    h = sub.add_parser("hilbert", help="Hilbert series of the q-harmonics")
    _group_args(h)
    h.add_argument("--q", type=_qmode, default=FORMAL)
    h.add_argument("--format", choices=["text", "json", "hbasis"], default="json")

    b = sub.add_parser("basis", help="reduced echelon basis per multidegree (JSON)")
    _group_args(b)
    b.add_argument("--q", type=_qmode, default=FORMAL)

    c = sub.add_parser("check", help="verdict reports")
    c.add_argument("--what", choices=["main", "e", "bracket", "inflate", "n2closed"], required=True)
    _group_args(c)
    c.add_argument("--r", type=_positive, default=None)
    c.add_argument("--d-max", type=_positive, default=4,
                   help="largest |d| for the bracket check")

    s = sub.add_parser("singular", help="scan q = -a/b for dimension jumps")
    _group_args(s)
    s.add_argument("--a-max", type=_positive, required=True)
    s.add_argument("--b-max", type=_positive, required=True)

    lay = sub.add_parser("layers", help="eps-layer decomposition of G(m,n)")
    _group_args(lay, sets=False, pflag=False)

    ch = sub.add_parser("character", help="graded characters over all group elements")
    _group_args(ch)
    return ap


def _query(args, q=FORMAL) -> HarmonicQuery:
    group = GroupSpec(args.m, getattr(args, "p", 1), args.n)
    return HarmonicQuery(group, getattr(args, "sets", 1), q, args.max_deg)


def _capacity(truncated: bool, bound: int) -> int:
    # the result is still printed; exit 2 marks it as incomplete
    if truncated:
        print(f"qharmonic: BoundTooSmall: degree {bound + 1} still has q-harmonics; "
              "raise --max-deg", file=sys.stderr)
        return 2
    return 0


def cmd_hilbert(args):
    query = _query(args, args.q)
    space = harmonic_space(query)
    code = _capacity(space.truncated, query.degree_bound)
    if args.format == "text":
        return format_series(space.series()), code
    hb = format_hbasis(hbasis_expression(space.hilbert, query.l))
    if args.format == "hbasis":
        return hb, code
    obj = {"query": query.to_json_obj(),
           "hilbert": {",".join(map(str, d)): k for d, k in space.hilbert.items()},
           "series": format_series(space.series()), "hbasis": hb,
           "total": space.dimension, "truncated": space.truncated}
    return obj, code


def cmd_basis(args):
    query = _query(args, args.q)
    space = harmonic_space(query)
    code = _capacity(space.truncated, query.degree_bound)
    space.hbasis = format_hbasis(hbasis_expression(space.hilbert, query.l))
    return space.to_json_obj(), code


def cmd_check(args):
    what = args.what
    if what == "main":
        rep = checks.check_main_conjecture(_query(args))
    elif what == "e":
        if args.p != 1 or args.sets != 1:
            raise UsageError("check e is about G(m,n) with one set of variables")
        rep = checks.check_conjecture_e(args.m, args.n, args.max_deg)
    elif what == "bracket":
        maxdeg = 6 if args.max_deg is None else args.max_deg
        rep = checks.check_bracket(args.sets, args.n, maxdeg, args.d_max)
    elif what == "inflate":
        if args.r is None:
            raise UsageError("check inflate needs --r")
        if args.m % args.r:
            raise UsageError(f"--r {args.r} does not divide --m {args.m}")
        rep = checks.check_inflation(args.m, args.r, args.n, args.max_deg)
    else:
        if args.n != 2 or args.sets != 1:
            raise UsageError("check n2closed needs --n 2 and one set of variables")
        rep = checks.check_closed_form(args.m, args.p)
    return rep, 0 if rep["verdict"] == "PASS" else 1


def cmd_singular(args):
    if args.max_deg is None:
        raise UsageError("singular needs --max-deg")
    group = GroupSpec(args.m, args.p, args.n)
    flagged = singular_scan(args.n, args.sets, group, args.a_max, args.b_max, args.max_deg)
    obj = {"group": str(group), "sets": args.sets, "a_max": args.a_max, "b_max": args.b_max,
           "max_deg": args.max_deg, "singular": [str(v) for v in flagged]}
    return obj, 0


def cmd_layers(args):
    query = HarmonicQuery(GroupSpec(args.m, 1, args.n), 1, FORMAL, args.max_deg)
    space = harmonic_space(query)
    code = _capacity(space.truncated, query.degree_bound)
    dec = layer_decomposition(args.m, args.n, space)
    layers = []
    for k, layer in enumerate(dec.layers):
        layers.append({
            "k": k, "dim": sum(len(b) for b in layer.values()),
            "basis": {",".join(map(str, d)): [f.to_json_obj() for f in b]
                      for d, b in layer.items() if b},
        })
    obj = {"query": query.to_json_obj(), "sizes": dec.sizes(), "mixed_elements": dec.mixed,
           "eps_maps": dec.eps_maps, "layers": layers}
    ok = all(e["onto"] for e in dec.eps_maps)
    return obj, code or (0 if ok else 1)


def cmd_character(args):
    query = _query(args)
    rep = checks.character_report(query)
    return rep, _capacity(rep["truncated"], query.degree_bound)


def _glue_q(argv: list) -> list:
    # argparse takes "--q -1/2" for two options; pass it as "--q=-1/2"
    out = []
    i = 0
    while i < len(argv):
        if argv[i] == "--q" and i + 1 < len(argv):
            out.append("--q=" + argv[i + 1])
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


COMMANDS = {"hilbert": cmd_hilbert, "basis": cmd_basis, "check": cmd_check,
            "singular": cmd_singular, "layers": cmd_layers, "character": cmd_character}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    argv = _glue_q(sys.argv[1:] if argv is None else list(argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        result, code = COMMANDS[args.command](args)
    except (UsageError, TooLarge, NotSingleSet, NotSymmetric, ValueError) as exc:
        print(f"qharmonic: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if isinstance(result, str):
        out.write(result + "\n")
    else:
        out.write(json.dumps(result, indent=2) + "\n")
    return code


def main(argv=None) -> int:
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
