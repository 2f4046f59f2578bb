"""Command-line front end.

Exit codes: 0 for success or an affirmative verdict, 1 for a negative
verdict, 2 for input errors, 3 for capacity errors (brute-force bounds).

Reductions on the command line are written in application order, e.g.
``"spr:3; snr:-2; spr:4; spr:-5"`` applies spr:3 first.  The literature
often writes compositions right to left; convert before typing.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import decide, graph, rules, strings
from .errors import CapacityError, NotApplicableError, SprsError

EXIT_OK = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_CAPACITY = 3


def _read_string(args) -> strings.PointerString:
    text = sys.stdin.read() if args.stdin else args.string
    if text is None:
        raise SprsError("no input string given (pass STRING or --stdin)")
    return strings.parse_string(text)


def _parse_removed(text: Optional[str]) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        ids = [int(tok) for tok in text.split(",") if tok.strip()]
    except ValueError:
        raise SprsError(f"malformed removal set {text!r}") from None
    if any(i < 2 for i in ids):
        raise SprsError(f"identities start at 2: {text!r}")
    return frozenset(ids)


def _require_legal(u: strings.PointerString) -> strings.PointerString:
    if not strings.is_legal(u):
        raise SprsError(f"string is not legal: {strings.format_string(u) or 'empty'}")
    return u


def _cmd_parse(args) -> int:
    print(strings.format_string(_read_string(args)))
    return EXIT_OK


def _cmd_encode(args) -> int:
    delta = strings.parse_pattern(args.pattern)
    print(strings.format_string(strings.encode_pattern(delta)))
    return EXIT_OK


def _cmd_apply(args) -> int:
    u = _require_legal(_read_string(args))
    phi = rules.parse_reduction(args.rules)
    try:
        result = rules.apply_reduction(phi, u)
    except NotApplicableError as exc:
        print(
            f"step {exc.step} ({exc.rule}) not applicable to "
            f"{strings.format_string(exc.string) or '(empty)'}"
        )
        return EXIT_NO
    print(strings.format_string(result))
    return EXIT_OK


def _cmd_graph(args) -> int:
    u = _require_legal(_read_string(args))
    G = graph.build_reduction_graph(u, _parse_removed(args.remove))
    if args.dot:
        sys.stdout.write(graph.export_dot(G))
    else:
        print(graph.summary_text(G))
    return EXIT_OK


def _cmd_reduct(args) -> int:
    u = _require_legal(_read_string(args))
    print(strings.format_string(decide.reduct_of(u, _parse_removed(args.remove))))
    return EXIT_OK


def _cmd_snr_count(args) -> int:
    u = _require_legal(_read_string(args))
    print(decide.snr_count(u, _parse_removed(args.remove)))
    return EXIT_OK


def _cmd_reducible(args) -> int:
    u = _require_legal(strings.parse_string(args.u))
    v = _require_legal(strings.parse_string(args.v))
    verdict = decide.is_reducible(
        u, v, rules.parse_ruleset(args.rules), want_witness=args.witness
    )
    if verdict.reducible:
        print("reducible")
        if verdict.witness is not None:
            print(f"witness: {rules.format_reduction(verdict.witness) or '(empty)'}")
        return EXIT_OK
    print(f"not reducible ({verdict.reason})")
    return EXIT_NO


def _cmd_successful(args) -> int:
    u = _require_legal(_read_string(args))
    if decide.successful_in(u, rules.parse_ruleset(args.rules)):
        print("successful")
        return EXIT_OK
    print("not successful")
    return EXIT_NO


def _cmd_enumerate(args) -> int:
    u = _require_legal(_read_string(args))
    found = rules.enumerate_successful_reductions(
        u, rules.parse_ruleset(args.rules), limit=args.limit
    )
    for phi in found:
        print(rules.format_reduction(phi) or "(empty)")
    return EXIT_OK


def _cmd_realizable(args) -> int:
    u = _require_legal(_read_string(args))
    if strings.is_realizable(u):
        print("realizable")
        return EXIT_OK
    print("not realizable")
    return EXIT_NO


def _add_string_arg(sub):
    sub.add_argument("string", nargs="?", help="pointer string, e.g. '3 2 -3 -2'")
    sub.add_argument("--stdin", action="store_true", help="read the string from stdin")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sprs",
        description="String pointer reduction system: rules, reduction graphs, "
        "and decision procedures for gene assembly in ciliates.",
        epilog=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="normalize a pointer string")
    _add_string_arg(p)
    p.set_defaults(func=_cmd_parse)

    p = sub.add_parser("encode", help="encode a micronuclear pattern, e.g. 'M3 M4 ~M2 M1'")
    p.add_argument("pattern")
    p.set_defaults(func=_cmd_encode)

    p = sub.add_parser("apply", help="apply a reduction, given in application order")
    _add_string_arg(p)
    p.add_argument("--rules", required=True, help="e.g. 'spr:3; snr:-2'")
    p.set_defaults(func=_cmd_apply)

    p = sub.add_parser("graph", help="reduction graph summary or DOT export")
    _add_string_arg(p)
    p.add_argument("--remove", help="comma list of identities for D")
    p.add_argument("--dot", action="store_true", help="emit DOT instead of a summary")
    p.set_defaults(func=_cmd_graph)

    p = sub.add_parser("reduct", help="the reduct red(u, D)")
    _add_string_arg(p)
    p.add_argument("--remove", help="comma list of identities for D")
    p.set_defaults(func=_cmd_reduct)

    p = sub.add_parser("snr-count", help="cyclic components = snr steps in any reduction")
    _add_string_arg(p)
    p.add_argument("--remove", help="comma list of identities for D")
    p.set_defaults(func=_cmd_snr_count)

    p = sub.add_parser("reducible", help="is U reducible to V in the rule set?")
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--rules", default="snr,spr,sdr", help="comma list of snr,spr,sdr")
    p.add_argument("--witness", action="store_true", help="attach a witness reduction")
    p.set_defaults(func=_cmd_reducible)

    p = sub.add_parser("successful", help="is the string reducible to the empty string?")
    _add_string_arg(p)
    p.add_argument("--rules", default="snr,spr,sdr", help="comma list of snr,spr,sdr")
    p.set_defaults(func=_cmd_successful)

    p = sub.add_parser("enumerate", help="list all successful reductions")
    _add_string_arg(p)
    p.add_argument("--rules", default="snr,spr,sdr", help="comma list of snr,spr,sdr")
    p.add_argument("--limit", type=int, default=None)
    p.set_defaults(func=_cmd_enumerate)

    p = sub.add_parser("realizable", help="can the string be renamed into a realistic one?")
    _add_string_arg(p)
    p.set_defaults(func=_cmd_realizable)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except SprsError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
