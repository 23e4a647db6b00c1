"""Command-line driver: ``biint parse|check|prove|translate|countermodel|corpus``.

Exit codes: 0 for a positive verdict, 1 for a negative one, 2 for usage or
parse errors.
"""

from __future__ import annotations

import argparse
import sys

from .corpus import CHECKERS, format_report, run_corpus
from .derivation import CheckError, format_derivation, format_path, parse_derivation
from .kripke import find_countermodel
from .labelled import (
    parse_labelled_sequent,
    print_labelled_sequent,
    search_llbii_cutfree,
)
from .lbii import cut_profile, search_lbii_cutfree
from .nested import search_nlbii_cutfree
from .syntax import ParseError, parse_formula, parse_nested_sequent, parse_sequent, print_formula
from .translate import (
    embed_lbii_to_nlbii,
    ntol,
    translate_lbii_to_llbii,
    translate_llbii_to_lbii,
    translate_llbii_to_nlbii,
    translate_nlbii_to_lbii,
    translate_nlbii_to_llbii,
)

CALCULI = ("lbii", "nlbii", "llbii")

TRANSLATORS = {
    ("lbii", "nlbii"): lambda d, root: embed_lbii_to_nlbii(d),
    ("lbii", "llbii"): lambda d, root: translate_lbii_to_llbii(d, root),
    ("nlbii", "lbii"): lambda d, root: translate_nlbii_to_lbii(d),
    ("nlbii", "llbii"): lambda d, root: translate_nlbii_to_llbii(d, root),
    ("llbii", "nlbii"): translate_llbii_to_nlbii,
    ("llbii", "lbii"): translate_llbii_to_lbii,
}


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _labelled_or_nested(text: str, root: str):
    try:
        return parse_labelled_sequent(text)
    except ParseError:
        return ntol(parse_nested_sequent(text), root)


def cmd_parse(args) -> int:
    if args.kind == "formula":
        print(print_formula(parse_formula(args.text)))
    elif args.kind == "sequent":
        print(parse_sequent(args.text))
    elif args.kind == "nested":
        print(parse_nested_sequent(args.text))
    else:
        print(print_labelled_sequent(parse_labelled_sequent(args.text)))
    return 0


def cmd_check(args) -> int:
    calc, d = parse_derivation(_read(args.file))
    if args.calculus and calc != args.calculus:
        raise UsageError(f"file holds a {calc} derivation, not {args.calculus}")
    try:
        if calc == "lbii":
            CHECKERS[calc](d, args.cuts, extended=args.extended)
        else:
            CHECKERS[calc](d, args.cuts)
    except CheckError as e:
        for path, msg in e.problems:
            print(f"{format_path(path)}: {msg}")
        return 1
    except ValueError as e:
        raise UsageError(str(e)) from None
    print(f"ok: {calc}, {d.size()} nodes, cut profile {cut_profile(d)}")
    return 0


def cmd_prove(args) -> int:
    if args.calculus == "lbii-cutfree":
        calc, d = "lbii", search_lbii_cutfree(parse_sequent(args.sequent), args.depth)
    elif args.calculus == "nlbii":
        calc, d = "nlbii", search_nlbii_cutfree(parse_nested_sequent(args.sequent), args.depth)
    else:
        calc, d = "llbii", search_llbii_cutfree(_labelled_or_nested(args.sequent, args.root), args.depth)
    if d is None:
        print("exhausted")
        return 1
    sys.stdout.write(format_derivation(d, calc))
    return 0


def cmd_translate(args) -> int:
    src, dst = args.source, args.target
    if src == dst:
        raise UsageError("source and target calculus coincide")
    if "llbii" in (src, dst) and args.root is None:
        raise UsageError("--root is required when translating from or to llbii")
    calc, d = parse_derivation(_read(args.file))
    if calc != src:
        raise UsageError(f"file holds a {calc} derivation, not {src}")
    try:
        CHECKERS[src](d, "full")
    except CheckError as e:
        for path, msg in e.problems:
            print(f"{format_path(path)}: {msg}", file=sys.stderr)
        raise UsageError("source derivation does not check") from None
    out = TRANSLATORS[src, dst](d, args.root)
    sys.stdout.write(format_derivation(out, dst))
    try:
        CHECKERS[dst](out, "full")
        status = "ok"
    except CheckError as e:
        status = f"FAILED ({len(e.problems)} problems)"
    print(f"; checked: {status}")
    print(f"; cut-profile: {cut_profile(out)}")
    return 0 if status == "ok" else 1


def cmd_countermodel(args) -> int:
    found = find_countermodel(parse_nested_sequent(args.sequent), args.max_worlds)
    if found is None:
        print(f"none up to {args.max_worlds}")
        return 1
    k, w = found
    print(k.describe(w))
    return 0


def cmd_corpus(args) -> int:
    results = run_corpus(args.manifest)
    sys.stdout.write(format_report(results, timing=args.timing))
    return 0 if all(r.ok for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="biint", description="Bi-intuitionistic sequent calculi toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("parse", help="parse and reprint a formula or sequent")
    s.add_argument("--kind", choices=("formula", "sequent", "nested", "labelled"), default="formula")
    s.add_argument("text")
    s.set_defaults(func=cmd_parse)

    s = sub.add_parser("check", help="check a derivation file")
    s.add_argument("--calculus", choices=CALCULI)
    s.add_argument("--cuts", default="full", help="none, full or unnest (unnest-cut-only)")
    s.add_argument("--extended", action="store_true", help="admit the derived unnest rules (lbii)")
    s.add_argument("file", help="derivation file, or - for stdin")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("prove", help="bounded cut-free proof search")
    s.add_argument("--calculus", choices=("lbii-cutfree", "nlbii", "llbii"), default="nlbii")
    s.add_argument("--depth", type=int, default=12)
    s.add_argument("--root", default="x", help="root label when a plain sequent is given to llbii")
    s.add_argument("sequent")
    s.set_defaults(func=cmd_prove)

    s = sub.add_parser("translate", help="translate a derivation between calculi")
    s.add_argument("--from", dest="source", choices=CALCULI, required=True)
    s.add_argument("--to", dest="target", choices=CALCULI, required=True)
    s.add_argument("--root")
    s.add_argument("file", help="derivation file, or - for stdin")
    s.set_defaults(func=cmd_translate)

    s = sub.add_parser("countermodel", help="search for a finite Kripke tree countermodel")
    s.add_argument("--max-worlds", type=int, default=4)
    s.add_argument("sequent")
    s.set_defaults(func=cmd_countermodel)

    s = sub.add_parser("corpus", help="run the corpus manifest and print a report")
    s.add_argument("--manifest", help="manifest JSON (default: bundled corpus)")
    s.add_argument("--timing", action="store_true", help="add a wall-time column")
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return 2
    except (UsageError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
