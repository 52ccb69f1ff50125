"""Command-line front end.

Subcommands map one-to-one onto library capabilities:

    nicf expand | convergents | singularize     digit-level queries
    dim                                         certified dimension interval
    pressure                                    pressure curve as CSV
    spectrum                                    greedy construction trace
    ledger                                      inequality re-verification
    vertex-letters                              the induced-alphabet ordering
    appendix                                    worked similarity systems

Exit codes: 0 success, 2 parse errors, 3 indeterminate certification
(e.g. a dimension tolerance that was not achieved).  All numeric CSV
fields are shortest-round-trip doubles rounded outward from the exact
rational bounds, so downstream consumers keep two-sided rigor.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from fractions import Fraction
from typing import List, Optional, Sequence

# let values leading with a negative digit (-8/21, "-3,3") pass as arguments
_NEGATIVE_VALUE = re.compile(r"^-\d")

from .cf_core import Word, convergents, nicf_digits, singularize
from .exactnum import DivergentTailError, float_down, float_up
from .ledger import case_ids, render_table, results_to_json, run_all, run_case
from .nicf_system import vertex_alphabet
from .pressure_dim import (
    DigitIfs,
    appendix_example,
    dim_interval,
    is_divergent,
    pressure_bounds,
)
from .spectrum import construct
from .symbolic import AlphabetSelection

PARSE_ERROR = 2
INDETERMINATE = 3


class SpecParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"alphabet spec error at byte {offset}: {message}")
        self.offset = offset


def parse_alphabet_spec(text: str) -> AlphabetSelection:
    """Grammar: spec := item ("," item)*
    item := INT | "abs:" INT ".." INT | "absmin:" INT ":" INT
    Whitespace is ignored; INT may be negative only in the bare form."""
    stripped = "".join(text.split())
    if not stripped:
        raise SpecParseError("empty spec", 0)
    items = stripped.split(",")
    offsets = []
    pos = 0
    for item in items:
        offsets.append(pos)
        pos += len(item) + 1

    def fail(i: int, msg: str):
        raise SpecParseError(msg, offsets[i])

    if len(items) == 1 and items[0].startswith(("abs:", "absmin:")):
        item = items[0]
        if item.startswith("abs:"):
            body = item[4:]
            if ".." not in body:
                fail(0, "expected abs:LO..HI")
            lo_s, hi_s = body.split("..", 1)
            lo, hi = _int_or_fail(lo_s, 0, fail), _int_or_fail(hi_s, 0, fail)
            if lo < 3:
                fail(0, "digits |b| >= 3 required for Phi_F")
            if hi < lo:
                fail(0, "empty range")
            return AlphabetSelection.abs_range(lo, hi)
        body = item[len("absmin:"):]
        if ":" not in body:
            fail(0, "expected absmin:LO:TRUNC")
        lo_s, tr_s = body.split(":", 1)
        lo, tr = _int_or_fail(lo_s, 0, fail), _int_or_fail(tr_s, 0, fail)
        if lo < 3:
            fail(0, "digits |b| >= 3 required for Phi_F")
        if tr < lo:
            fail(0, "truncation below the lower bound")
        return AlphabetSelection.cofinite(lo, tr)

    letters: List[int] = []
    for i, item in enumerate(items):
        if item.startswith(("abs:", "absmin:")):
            fail(i, "range forms cannot be mixed with explicit digits")
        letters.append(_int_or_fail(item, i, fail))
    try:
        return AlphabetSelection.explicit(letters)
    except ValueError as exc:
        raise SpecParseError(str(exc), 0)


def _int_or_fail(s: str, i: int, fail):
    try:
        return int(s)
    except ValueError:
        fail(i, f"not an integer: {s!r}")


def _parse_rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational: {s!r} ({exc})")


def _parse_t_grid(spec: str) -> List[Fraction]:
    parts = spec.split(":")
    if len(parts) != 3:
        raise ValueError("t-grid must be start:stop:step")
    a, b, step = (_parse_rational(p) for p in parts)
    if step <= 0:
        raise ValueError("t-grid step must be positive")
    out = []
    t = a
    while t <= b:
        out.append(t)
        t += step
    return out


def _out_lo(x: Fraction) -> float:
    return float_down(x)


def _out_hi(x: Fraction) -> float:
    return float_up(x)


# ---------------------------------------------------------------------------
# subcommand implementations
# ---------------------------------------------------------------------------

def _cmd_nicf(args) -> int:
    if args.nicf_cmd == "expand":
        x = _parse_rational(args.value)
        print(json.dumps(nicf_digits(x, args.digits)))
        return 0
    if args.nicf_cmd == "convergents":
        x = _parse_rational(args.value)
        digits = nicf_digits(x, args.digits)
        if not digits:
            print("n    p_n    q_n")
            return 0
        pairs = convergents(Word(digits))
        widths = max(len(str(p)) for p, _ in pairs), max(len(str(q)) for _, q in pairs)
        print(f"{'n':<4} {'p_n':>{widths[0]}} {'q_n':>{widths[1]}}")
        for n, (p, q) in enumerate(pairs):
            print(f"{n:<4} {p:>{widths[0]}} {q:>{widths[1]}}")
        return 0
    if args.nicf_cmd == "singularize":
        rcf = [int(a) for a in args.rcf.split(",") if a.strip()]
        print(json.dumps(singularize(rcf)))
        return 0
    raise AssertionError


def _cmd_dim(args) -> int:
    sel = parse_alphabet_spec(args.alphabet)
    tol = _parse_rational(args.tol)
    di = dim_interval(DigitIfs(sel), args.depth, tol,
                      bits=args.bits, threads=args.threads)
    print(json.dumps({"lo": _out_lo(di.lo), "hi": _out_hi(di.hi),
                      "depth": di.depth}))
    return 0 if di.achieved() else INDETERMINATE


def _cmd_pressure(args) -> int:
    sel = parse_alphabet_spec(args.alphabet)
    grid = _parse_t_grid(args.t_grid)
    rows = ["t,pressure_lo,pressure_hi"]
    for t in grid:
        pb = pressure_bounds(DigitIfs(sel), t, args.depth,
                             bits=args.bits, threads=args.threads)
        if is_divergent(pb):
            rows.append(f"{float(t)!r},inf,inf")
        else:
            rows.append(f"{float(t)!r},{_out_lo(pb.lo)!r},{_out_hi(pb.hi)!r}")
    text = "\n".join(rows) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
        print(f"wrote {len(grid)} rows to {args.csv}")
    else:
        sys.stdout.write(text)
    return 0


def _cmd_spectrum(args) -> int:
    trace = construct(_parse_rational(args.target), args.system, args.budget,
                      args.depth, bits=args.bits, threads=args.threads)
    print(json.dumps(trace.to_json_dict(), indent=2))
    return 0


def _cmd_ledger(args) -> int:
    if args.case:
        results = [run_case(args.case)]
    else:
        results = run_all()
    if args.json:
        print(results_to_json(results))
    else:
        print(render_table(results))
    return 0


def _cmd_vertex_letters(args) -> int:
    letters = vertex_alphabet(args.count)
    print(json.dumps([str(l) for l in letters]))
    return 0


def _cmd_appendix(args) -> int:
    ratio = _parse_rational(args.ratio)
    if args.example == "cycle4":
        edges: Sequence = (1, 2, 3, 4)
        vertices = ("v", "w", "z")
    else:
        edges = tuple("abcdef")
        vertices = ("v",)
    system = appendix_example(args.example, {e: ratio for e in edges})
    grid = _parse_t_grid(args.t_grid)
    rows = ["t,vertex,closed_lo,closed_hi,enclosure_lo,enclosure_hi,consistent"]
    for t in grid:
        for v in vertices:
            try:
                closed = system.closed_pressure(v, t, bits=args.bits)
                enc = system.enumerated_pressure(v, t, args.max_len, bits=args.bits)
            except DivergentTailError:
                rows.append(f"{float(t)!r},{v},inf,inf,inf,inf,")
                continue
            consistent = max(enc.lo, closed.lo) <= min(enc.hi, closed.hi)
            rows.append(
                f"{float(t)!r},{v},{_out_lo(closed.lo)!r},{_out_hi(closed.hi)!r},"
                f"{_out_lo(enc.lo)!r},{_out_hi(enc.hi)!r},{int(consistent)}")
    text = "\n".join(rows) + "\n"
    if args.csv:
        with open(args.csv, "w") as fh:
            fh.write(text)
        print(f"wrote {len(rows) - 1} rows to {args.csv}")
    else:
        sys.stdout.write(text)
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def _allow_negative_values(p: argparse.ArgumentParser) -> None:
    p._negative_number_matcher = _NEGATIVE_VALUE
    for action in p._actions:
        if isinstance(action, argparse._SubParsersAction):
            for child in action.choices.values():
                _allow_negative_values(child)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="nicfdim",
        description="rigorous dimension bounds for nearest-integer "
                    "continued-fraction digit systems")
    ap.add_argument("--bits", type=int, default=64,
                    help="working precision for enclosures (default 64)")
    ap.add_argument("--threads", type=int, default=1,
                    help="threads for partition sums; output is identical "
                         "for every value")
    sub = ap.add_subparsers(dest="cmd", required=True)

    nicf = sub.add_parser("nicf", help="continued-fraction digit queries")
    nsub = nicf.add_subparsers(dest="nicf_cmd", required=True)
    p = nsub.add_parser("expand", help="nearest-integer digits of a rational")
    p.add_argument("value")
    p.add_argument("--digits", type=int, default=20)
    p = nsub.add_parser("convergents", help="p_n, q_n table of a rational")
    p.add_argument("value")
    p.add_argument("--digits", type=int, default=20)
    p = nsub.add_parser("singularize", help="rewrite a regular digit block")
    p.add_argument("--rcf", required=True, help='comma list, e.g. "2,1,3"')

    p = sub.add_parser("dim", help="certified dimension interval")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--depth", type=int, default=12)
    p.add_argument("--tol", default="0.02")

    p = sub.add_parser("pressure", help="pressure curve over a t grid")
    p.add_argument("--alphabet", required=True)
    p.add_argument("--t-grid", required=True, help="start:stop:step")
    p.add_argument("--depth", type=int, default=8)
    p.add_argument("--csv", help="output path (stdout if omitted)")

    p = sub.add_parser("spectrum", help="greedy digit-set construction")
    p.add_argument("--target", required=True)
    p.add_argument("--system", choices=("phi_f", "phi_v"), default="phi_f")
    p.add_argument("--budget", type=int, default=20)
    p.add_argument("--depth", type=int, default=10)

    p = sub.add_parser("ledger", help="re-verify the case inequalities")
    p.add_argument("--case", choices=case_ids())
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("vertex-letters", help="induced-alphabet ordering")
    p.add_argument("--count", type=int, default=22)

    p = sub.add_parser("appendix", help="worked similarity systems")
    p.add_argument("--example", choices=("cycle4", "triangle6"), required=True)
    p.add_argument("--ratio", default="1/3")
    p.add_argument("--t-grid", required=True, help="start:stop:step")
    p.add_argument("--max-len", type=int, default=24)
    p.add_argument("--csv", help="output path (stdout if omitted)")
    _allow_negative_values(ap)
    return ap


_DISPATCH = {
    "nicf": _cmd_nicf,
    "dim": _cmd_dim,
    "pressure": _cmd_pressure,
    "spectrum": _cmd_spectrum,
    "ledger": _cmd_ledger,
    "vertex-letters": _cmd_vertex_letters,
    "appendix": _cmd_appendix,
}


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return _DISPATCH[args.cmd](args)
    except (SpecParseError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return PARSE_ERROR


if __name__ == "__main__":
    sys.exit(main())
