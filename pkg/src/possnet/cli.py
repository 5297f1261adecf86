"""Command-line interface: ``possnet SUBCOMMAND ...``.

Exit codes: 0 success (or "equivalent"), 1 not equivalent, 2 input error,
3 constraint violation.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence

from .formats import (
    FormatError,
    format_degree,
    load_document,
    render_fuzzy_joint,
    render_joint,
    render_kb,
    render_network,
)
from .fuzzy import FuzzyNetwork, defuzzified_network, validate_fuzzy
from .kb import ScopeError, equivalent, normalize_kb
from .logic import LogicError, parse_formula
from .network import MEASURES, InvalidNetworkError, PossibilisticNetwork, query, require_valid, validate
from .transform import LocalKB, LocalKBSet, kb_to_network, network_to_kb, roundtrip_report

EXIT_OK, EXIT_FALSE, EXIT_INPUT, EXIT_CONSTRAINT = 0, 1, 2, 3


class InputError(Exception):
    pass


def _load(path: str, *allowed: type):
    try:
        doc = load_document(path)
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror or exc}") from None
    if allowed and not isinstance(doc.value, allowed):
        kinds = " or ".join(t.__name__ for t in allowed)
        raise InputError(f"{path}: expected a {kinds} file")
    return doc.value


def _emit(text: str, out: Optional[str]) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8", newline="\n")
    else:
        sys.stdout.write(text)


def cmd_validate(args) -> int:
    value = _load(args.file, PossibilisticNetwork, FuzzyNetwork)
    report = validate_fuzzy(value) if isinstance(value, FuzzyNetwork) else validate(value)
    if report.is_valid:
        print(f"{args.file}: valid", file=sys.stderr)
        return EXIT_OK
    for issue in report.issues:
        print(f"{args.file}: {issue}", file=sys.stderr)
    return EXIT_CONSTRAINT


def _warn(net: PossibilisticNetwork, label: str) -> None:
    """Fail on structural defects; report degree-constraint issues as warnings."""
    for issue in require_valid(net).issues:
        print(f"warning: {label}: {issue}", file=sys.stderr)


def cmd_joint(args) -> int:
    value = _load(args.file, PossibilisticNetwork, FuzzyNetwork)
    if isinstance(value, FuzzyNetwork):
        for issue in validate_fuzzy(value).issues:
            print(f"warning: {args.file}: {issue}", file=sys.stderr)
        sys.stdout.write(render_fuzzy_joint(value, args.format))
    else:
        _warn(value, args.file)
        sys.stdout.write(render_joint(value, args.format))
    return EXIT_OK


def cmd_query(args) -> int:
    net = _load(args.file, PossibilisticNetwork)
    _warn(net, args.file)
    formula = parse_formula(args.formula, net.variables)
    print(format_degree(query(net, formula, args.measure)))
    return EXIT_OK


def cmd_to_kb(args) -> int:
    net = _load(args.file, PossibilisticNetwork)
    _warn(net, args.file)
    _emit(render_kb(network_to_kb(net)), args.output)
    return EXIT_OK


def cmd_from_kb(args) -> int:
    kbs = _load(args.file, LocalKBSet)
    net = kb_to_network(kbs)
    _warn(net, "recovered network")
    _emit(render_network(net), args.output)
    return EXIT_OK


def cmd_roundtrip(args) -> int:
    net = _load(args.file, PossibilisticNetwork)
    _warn(net, args.file)
    report = roundtrip_report(net)
    print(report.format())
    return EXIT_OK if report.pi_all_match else EXIT_CONSTRAINT


def cmd_equiv(args) -> int:
    first = _load(args.kb1, LocalKBSet)
    second = _load(args.kb2, LocalKBSet)
    if set(first.variables) != set(second.variables):
        raise ScopeError("the two files do not cover the same nodes")
    same = True
    for base in first:
        other = second[base.variable]
        if set(other.parents) != set(base.parents):
            raise ScopeError(f"node {base.variable} has different parents in the two files")
        if not equivalent(base.kb, other.kb):
            print(f"{base.variable}: not equivalent", file=sys.stderr)
            same = False
    print("equivalent" if same else "not equivalent")
    return EXIT_OK if same else EXIT_FALSE


def cmd_normalize(args) -> int:
    kbs = _load(args.kb, LocalKBSet)
    out = LocalKBSet(tuple(LocalKB(b.variable, b.parents, normalize_kb(b.kb), b.name)
                           for b in kbs), kbs.name)
    removed = kbs.formula_count() - out.formula_count()
    print(f"removed {removed} subsumed formula(s)", file=sys.stderr)
    _emit(render_kb(out), args.output)
    return EXIT_OK


def cmd_defuzzify(args) -> int:
    net = _load(args.file, FuzzyNetwork)
    _emit(render_network(defuzzified_network(net)), args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="possnet",
        description="Possibilistic-necessity networks and weighted knowledge bases.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    p = sub.add_parser("validate", help="check network constraints")
    p.add_argument("file", help=".pnet or .pfnet file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("joint", help="print the joint possibility/necessity/average table")
    p.add_argument("file", help=".pnet or .pfnet file")
    p.add_argument("--format", choices=("table", "csv"), default="table")
    p.set_defaults(func=cmd_joint)

    p = sub.add_parser("query", help="degree of a formula under the joint distribution")
    p.add_argument("file", help=".pnet file")
    p.add_argument("--formula", required=True,
                   help="expression over literals with ! & | and parentheses, e.g. '!a & (b | c)'")
    p.add_argument("--measure", choices=MEASURES, default="pi")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("to-kb", help="compile a network into local weighted bases")
    p.add_argument("file", help=".pnet file")
    p.add_argument("-o", "--output", help="write to this .pkb file instead of stdout")
    p.set_defaults(func=cmd_to_kb)

    p = sub.add_parser("from-kb", help="rebuild a network from local weighted bases")
    p.add_argument("file", help=".pkb file")
    p.add_argument("-o", "--output", help="write to this .pnet file instead of stdout")
    p.set_defaults(func=cmd_from_kb)

    p = sub.add_parser("roundtrip", help="compile and rebuild a network, comparing every cell")
    p.add_argument("file", help=".pnet file")
    p.set_defaults(func=cmd_roundtrip)

    p = sub.add_parser("equiv", help="exit 0 if two .pkb files induce the same distributions")
    p.add_argument("kb1")
    p.add_argument("kb2")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("normalize", help="remove subsumed formulas from every local base")
    p.add_argument("kb", help=".pkb file")
    p.add_argument("-o", "--output", help="write to this .pkb file instead of stdout")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("defuzzify", help="replace triangular necessities by their peaks")
    p.add_argument("file", help=".pfnet file")
    p.add_argument("-o", "--output", help="write to this .pnet file instead of stdout")
    p.set_defaults(func=cmd_defuzzify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FormatError as exc:
        for d in exc.diagnostics:
            print(f"error: {d}", file=sys.stderr)
        return EXIT_INPUT
    except InvalidNetworkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONSTRAINT
    except (InputError, LogicError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
