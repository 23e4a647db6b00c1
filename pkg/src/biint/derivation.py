"""Derivation trees shared by the three calculi, and their text format.

A derivation is written as nested s-expressions::

    (lbii
      (cut "p |- q" :cut-formula "p -< q"
        (hyp "...")
        (hyp "...")))

The head symbol names the calculus (``lbii``, ``nlbii`` or ``llbii``).  Each
node is ``(rule "<conclusion>" [:key "<value>"]* <premise>*)``.  Lines
starting with ``;`` are comments.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Callable, Iterator

from .syntax import ParseError

CALCULI = ("lbii", "nlbii", "llbii")


class CutPolicy(str, enum.Enum):
    NONE = "none"
    FULL = "full"
    UNNEST = "unnest"

    @classmethod
    def coerce(cls, value) -> "CutPolicy":
        if isinstance(value, cls):
            return value
        aliases = {"no-cut": "none", "full-cut": "full", "unnest-cut-only": "unnest"}
        return cls(aliases.get(value, value))


@dataclass(frozen=True)
class Derivation:
    rule: str
    conclusion: object
    premises: tuple = ()
    meta: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(self.premises))
        meta = self.meta.items() if isinstance(self.meta, dict) else self.meta
        object.__setattr__(self, "meta", tuple(meta))

    def get(self, key: str, default=None):
        for k, v in self.meta:
            if k == key:
                return v
        return default

    def nodes(self, path: tuple = ()) -> Iterator[tuple[tuple, "Derivation"]]:
        """Pre-order walk yielding (path, node); a path lists premise indices from the root."""
        yield path, self
        for i, p in enumerate(self.premises):
            yield from p.nodes(path + (i,))

    def size(self) -> int:
        return sum(1 for _ in self.nodes())

    def height(self) -> int:
        return 1 + max((p.height() for p in self.premises), default=0)

    def rules(self) -> list[str]:
        return [n.rule for _, n in self.nodes()]


def format_path(path: tuple) -> str:
    return "root" if not path else "root." + ".".join(map(str, path))


class CheckError(Exception):
    """A derivation failed its checker; ``problems`` lists (path, message) pairs."""

    def __init__(self, problems: list[tuple[tuple, str]]):
        self.problems = problems
        super().__init__("; ".join(f"{format_path(p)}: {m}" for p, m in problems))


# -- text format ----------------------------------------------------------------

def format_derivation(d: Derivation, calculus: str, show: Callable = str) -> str:
    lines = [f"({calculus}"]
    _format_node(d, 1, lines, show)
    lines[-1] += ")"
    return "\n".join(lines) + "\n"


def _format_node(d: Derivation, indent: int, lines: list, show: Callable) -> None:
    head = f'{"  " * indent}({d.rule} "{show(d.conclusion)}"'
    for k, v in d.meta:
        head += f' :{k} "{v}"'
    lines.append(head)
    for p in d.premises:
        _format_node(p, indent + 1, lines, show)
    lines[-1] += ")"


_SEXP_TOKEN = re.compile(r'\s*(?:(;[^\n]*)|(\()|(\))|"([^"]*)"|(:[A-Za-z][\w-]*)|([A-Za-z][\w-]*)|(\S))')


def _sexp_tokens(text: str) -> list[tuple[str, str, int]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _SEXP_TOKEN.match(text, pos)
        if m is None:
            break
        pos = m.end()
        if m.group(1) is not None:
            continue
        if m.group(2):
            out.append(("(", "(", m.start(2)))
        elif m.group(3):
            out.append((")", ")", m.start(3)))
        elif m.group(4) is not None:
            out.append(("str", m.group(4), m.start(4) - 1))
        elif m.group(5):
            out.append(("key", m.group(5)[1:], m.start(5)))
        elif m.group(6):
            out.append(("sym", m.group(6), m.start(6)))
        else:
            raise ParseError(f"unexpected character {m.group(7)!r}", "", m.start(7))
    return out


def parse_derivation(text: str, parsers: dict[str, Callable] | None = None) -> tuple[str, Derivation]:
    """Parse derivation text; returns (calculus, derivation).

    ``parsers`` maps a calculus tag to its conclusion parser; by default the
    standard, nested and labelled sequent parsers are used.
    """
    if parsers is None:
        parsers = default_parsers()
    toks = _sexp_tokens(text)
    i = 0

    def expect(kind):
        nonlocal i
        if i >= len(toks):
            raise ParseError("unexpected end of derivation text", "", len(text))
        tok = toks[i]
        if tok[0] != kind:
            raise ParseError(f"expected {kind}, got {tok[1]!r}", "", tok[2])
        i += 1
        return tok

    expect("(")
    calculus = expect("sym")[1]
    if calculus not in parsers:
        raise ParseError(f"unknown calculus tag {calculus!r}", "", toks[i - 1][2])
    parse_conclusion = parsers[calculus]

    def node() -> Derivation:
        nonlocal i
        expect("(")
        rule = expect("sym")[1]
        tok = expect("str")
        try:
            concl = parse_conclusion(tok[1])
        except ParseError as e:
            raise ParseError(f"in conclusion of {rule}: {e.message}", tok[1], tok[2]) from e
        meta = []
        while i < len(toks) and toks[i][0] == "key":
            key = toks[i][1]
            i += 1
            meta.append((key, expect("str")[1]))
        premises = []
        while i < len(toks) and toks[i][0] == "(":
            premises.append(node())
        expect(")")
        return Derivation(rule, concl, tuple(premises), tuple(meta))

    d = node()
    expect(")")
    if i != len(toks):
        raise ParseError("trailing text after derivation", "", toks[i][2])
    return calculus, d


def default_parsers() -> dict[str, Callable]:
    from .labelled import parse_labelled_sequent
    from .syntax import parse_nested_sequent, parse_sequent

    return {"lbii": parse_sequent, "nlbii": parse_nested_sequent, "llbii": parse_labelled_sequent}


def dumps(d: Derivation, calculus: str) -> str:
    return format_derivation(d, calculus)


def loads(text: str, calculus: str | None = None) -> Derivation:
    tag, d = parse_derivation(text)
    if calculus is not None and tag != calculus:
        raise ParseError(f"expected a {calculus} derivation, found {tag}", "", 0)
    return d
