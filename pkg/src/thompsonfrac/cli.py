"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage, parse or bound errors.
Everything on stdout is deterministic; timings go to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys

from .cantor import CPoint, ParseError
from .groups import BoundExceeded, GroupError
from .thompson import VElement, is_in_F, is_in_T

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


def ascii_words(text: str) -> str:
    """Print the empty word as ``e`` so output stays plain ASCII."""
    return text.replace("ε", "e")


def _out(text: str):
    sys.stdout.write(ascii_words(text) + "\n")


def _format_slope(n: int) -> str:
    return f"{n:+d}" if n else "0"


def cmd_v(args) -> int:
    op = args.op
    tables = [VElement.parse(s) for s in args.tables]
    need = {"compose": (2, None), "invert": (1, 1), "reduce": (1, 1), "apply": (1, 1), "slope": (1, 1), "member": (1, 1)}
    lo, hi = need[op]
    if len(tables) < lo or (hi is not None and len(tables) > hi):
        raise UsageError(f"v {op} takes {lo}{'' if hi == lo else '+'} table(s)")
    v = tables[0]
    if op == "compose":
        for w in tables[1:]:
            v = v * w
        _out(str(v))
    elif op == "invert":
        _out(str(v.inverse()))
    elif op == "reduce":
        _out(str(v))
    elif op in ("apply", "slope"):
        if args.at is None:
            raise UsageError(f"v {op} needs --at POINT")
        x = CPoint.parse(args.at)
        _out(str(v.apply(x)) if op == "apply" else _format_slope(v.slope(x)))
    else:
        group = args.group or "V"
        ok = {"F": is_in_F, "T": is_in_T, "V": lambda _: True}[group](v)
        _out("true" if ok else "false")
    return EXIT_OK


def cmd_check(args) -> int:
    from . import fixtures
    from .checks import SUITES, run_suite

    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; known: {', '.join(sorted(SUITES))}")
    _, default = SUITES[args.suite]
    spec = args.triple or default
    t = fixtures.load(spec) if spec else None
    report = run_suite(args.suite, t, args.seed, args.iters)
    _out(report.render())
    sys.stderr.write(f"elapsed: {report.elapsed:.3f}s\n")
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_classify(args) -> int:
    from . import fixtures
    from .classification import cocf_check, cor28_decide, prop24_verdict

    t1, t2 = fixtures.load(args.left), fixtures.load(args.right)
    fn = {"prop24": prop24_verdict, "cor28": cor28_decide, "cocf": cocf_check}[args.mode]
    verdict = fn(t1, t2)
    sys.stdout.write(json.dumps(verdict.to_json(), sort_keys=True, ensure_ascii=False) + "\n")
    return EXIT_OK


def cmd_g(args) -> int:
    from . import fixtures
    from .fraction import FractionElement

    t = fixtures.load(args.triple)
    xs = [FractionElement.parse(t, s) for s in args.elements]
    if args.op == "mul":
        acc = xs[0]
        for y in xs[1:]:
            acc = acc * y
        _out(str(acc))
    else:
        if len(xs) != 1:
            raise UsageError("g inv takes one element")
        _out(str(xs[0].inverse()))
    return EXIT_OK


def cmd_fixtures(args) -> int:
    from . import fixtures

    for name in fixtures.NAMES:
        t = fixtures.get(name)
        _out(f"{name}\torder={t.group.order}\tautomorphisms={'yes' if t.autos else 'no'}")
    return EXIT_OK


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="thompsonfrac", description="Exact computations in fraction groups LΓ ⋊ V.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("v", help="operations on elements of Thompson's group V")
    v.add_argument("op", choices=["compose", "invert", "reduce", "apply", "slope", "member"])
    v.add_argument("tables", nargs="+", help='tables such as "00->0 01->10 1->11"')
    v.add_argument("--at", help='point such as "01.(10)" or "(0)"')
    v.add_argument("--group", choices=["F", "T", "V"], help="subgroup for member")
    v.set_defaults(func=cmd_v)

    c = sub.add_parser("check", help="run an identity suite")
    c.add_argument("--suite", required=True)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--iters", type=int, default=100)
    c.add_argument("--triple", help="triple JSON file or fixture name")
    c.set_defaults(func=cmd_check)

    k = sub.add_parser("classify", help="classification verdicts for two triples")
    k.add_argument("--left", required=True)
    k.add_argument("--right", required=True)
    k.add_argument("--mode", choices=["prop24", "cor28", "cocf"], default="prop24")
    k.set_defaults(func=cmd_classify)

    g = sub.add_parser("g", help="multiply or invert fraction group elements")
    g.add_argument("op", choices=["mul", "inv"])
    g.add_argument("elements", nargs="+", help='elements such as "[0:1; 1:0] | [0->1 1->0]"')
    g.add_argument("--triple", required=True)
    g.set_defaults(func=cmd_g)

    f = sub.add_parser("fixtures", help="list the bundled triples")
    f.set_defaults(func=cmd_fixtures)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"usage error: {exc}\n")
    except BoundExceeded as exc:
        sys.stderr.write(f"bound exceeded: {exc}\n")
    except (ParseError, GroupError, FileNotFoundError, ValueError, KeyError) as exc:
        sys.stderr.write(f"error: {exc}\n")
    return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
