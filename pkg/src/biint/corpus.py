"""The bundled corpus: shipped derivations, search goals and countermodel goals.

``run_corpus`` evaluates every manifest entry and ``format_report`` renders
the results as a plain-text table.  Without timing the report depends only
on the inputs.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .derivation import CheckError, Derivation, parse_derivation
from .kripke import find_countermodel
from .labelled import check_llbii, parse_labelled_sequent, search_llbii_cutfree
from .lbii import check_lbii, search_lbii_cutfree
from .nested import check_nlbii, search_nlbii_cutfree
from .syntax import parse_nested_sequent, parse_sequent
from .translate import (
    embed_lbii_to_nlbii,
    translate_lbii_to_llbii,
    translate_llbii_to_lbii,
    translate_llbii_to_nlbii,
    translate_nlbii_to_lbii,
    translate_nlbii_to_llbii,
)

VERDICTS = ("proves", "exhausts", "checks", "fails", "countermodel", "none")

CHECKERS = {"lbii": check_lbii, "nlbii": check_nlbii, "llbii": check_llbii}
SEARCHES = {
    "lbii": (parse_sequent, search_lbii_cutfree),
    "nlbii": (parse_nested_sequent, search_nlbii_cutfree),
    "llbii": (parse_labelled_sequent, search_llbii_cutfree),
}


@dataclass
class Entry:
    name: str
    calculus: str
    expected: str
    sequent: str | None = None
    derivation: str | None = None
    cuts: str = "full"
    depth: int = 12
    worlds: int = 3

    def __post_init__(self):
        if self.expected not in VERDICTS:
            raise ValueError(f"{self.name}: unknown expected verdict {self.expected!r}")
        if (self.sequent is None) == (self.derivation is None):
            raise ValueError(f"{self.name}: give exactly one of sequent or derivation")


@dataclass
class Result:
    entry: Entry
    verdict: str
    detail: str
    derivation: Derivation | None = None
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.verdict == self.entry.expected


def data_dir() -> Path:
    return Path(str(resources.files("biint") / "data"))


def load_manifest(path: str | Path | None = None) -> tuple[list[Entry], Path]:
    path = Path(path) if path is not None else data_dir() / "corpus.json"
    raw = json.loads(path.read_text())
    return [Entry(**e) for e in raw["entries"]], path.parent


def load_derivation(path: str | Path) -> tuple[str, Derivation]:
    return parse_derivation(Path(path).read_text())


def run_entry(entry: Entry, base: Path) -> Result:
    start = time.perf_counter()
    if entry.derivation is not None:
        calc, d = load_derivation(base / entry.derivation)
        if calc != entry.calculus:
            raise ValueError(f"{entry.name}: file holds a {calc} derivation")
        try:
            CHECKERS[calc](d, entry.cuts)
            verdict, detail = "checks", f"cuts={entry.cuts} nodes={d.size()}"
        except CheckError as e:
            verdict, detail = "fails", str(e)
            d = None
    elif entry.calculus == "kripke":
        s = parse_nested_sequent(entry.sequent)
        found = find_countermodel(s, entry.worlds)
        d = None
        if found is None:
            verdict, detail = "none", f"worlds<={entry.worlds}"
        else:
            verdict, detail = "countermodel", f"worlds={len(found[0].worlds)}"
    else:
        parse, search = SEARCHES[entry.calculus]
        d = search(parse(entry.sequent), entry.depth)
        if d is None:
            verdict, detail = "exhausts", f"depth={entry.depth}"
        else:
            verdict, detail = "proves", f"depth={entry.depth} nodes={d.size()}"
    return Result(entry, verdict, detail, d, time.perf_counter() - start)


def run_corpus(manifest: str | Path | None = None) -> list[Result]:
    entries, base = load_manifest(manifest)
    return [run_entry(e, base) for e in entries]


def format_report(results: list[Result], timing: bool = False) -> str:
    header = ["name", "calculus", "expected", "verdict", "detail", "ok"]
    if timing:
        header.append("seconds")
    rows = []
    for r in results:
        row = [r.entry.name, r.entry.calculus, r.entry.expected, r.verdict, r.detail, "yes" if r.ok else "NO"]
        if timing:
            row.append(f"{r.seconds:.3f}")
        rows.append(row)
    widths = [max(len(h), *(len(row[i]) for row in rows)) if rows else len(h) for i, h in enumerate(header)]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    passed = sum(r.ok for r in results)
    lines.append(f"{passed}/{len(results)} entries as expected")
    return "\n".join(lines) + "\n"


def corpus_derivations(results: list[Result] | None = None, translations: bool = True) -> list[tuple[str, str, Derivation]]:
    """Every checker-ok derivation the corpus yields: (name, calculus, derivation).

    Shipped derivations and search results come first; with ``translations``
    each is also carried into the other two calculi (root label ``x``).
    """
    if results is None:
        results = run_corpus()
    base = [(r.entry.name, r.entry.calculus, r.derivation) for r in results if r.derivation is not None]
    out = list(base)
    if not translations:
        return out
    for name, calc, d in base:
        if calc == "lbii":
            out.append((f"{name}>nlbii", "nlbii", embed_lbii_to_nlbii(d)))
            out.append((f"{name}>llbii", "llbii", translate_lbii_to_llbii(d, "x")))
        elif calc == "nlbii":
            out.append((f"{name}>lbii", "lbii", translate_nlbii_to_lbii(d)))
            out.append((f"{name}>llbii", "llbii", translate_nlbii_to_llbii(d, "x")))
        else:
            root = min(d.conclusion.tree.nodes)
            out.append((f"{name}>nlbii", "nlbii", translate_llbii_to_nlbii(d, root)))
            out.append((f"{name}>lbii", "lbii", translate_llbii_to_lbii(d, root)))
    return out
