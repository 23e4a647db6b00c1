"""Formulas, (nested) sequents and their concrete text syntax.

Grammar, tightest to loosest binding::

    atom    [a-z][a-zA-Z0-9_]*      T  F  ( ... )  !A  ~A
    &       left associative
    |       left associative
    -<      left associative (exclusion)
    ->      right associative (implication)

``!A`` abbreviates ``A -> F`` and ``~A`` abbreviates ``T -< A``; the printer
never emits them.  Sequents are ``A, B |- C`` with either side possibly
empty.  Nested sequents may carry bracketed members: ``p, [q |- r] |- s``.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Union


class ParseError(ValueError):
    """Syntax error at a character offset of the input text."""

    def __init__(self, message: str, text: str = "", pos: int = 0):
        self.message = message
        self.text = text
        self.pos = pos
        super().__init__(f"{message} at position {pos}" + (f": {text!r}" if text else ""))


class Formula:
    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self)


@dataclass(frozen=True)
class Atom(Formula):
    name: str


@dataclass(frozen=True)
class Top(Formula):
    pass


@dataclass(frozen=True)
class Bot(Formula):
    pass


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Impl(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Excl(Formula):
    left: Formula
    right: Formula


TOP = Top()
BOT = Bot()

_BINARY = {And: "&", Or: "|", Excl: "-<", Impl: "->"}
# binding strength; larger binds tighter
_PREC = {Impl: 1, Excl: 2, Or: 3, And: 4}


def atoms(f: Formula) -> set[str]:
    if isinstance(f, Atom):
        return {f.name}
    if isinstance(f, (Top, Bot)):
        return set()
    return atoms(f.left) | atoms(f.right)


def depth(f: Formula) -> int:
    if isinstance(f, (Atom, Top, Bot)):
        return 0
    return 1 + max(depth(f.left), depth(f.right))


def subformulas(f: Formula) -> Iterable[Formula]:
    yield f
    if isinstance(f, (And, Or, Impl, Excl)):
        yield from subformulas(f.left)
        yield from subformulas(f.right)


# -- printing ---------------------------------------------------------------

@lru_cache(maxsize=None)
def print_formula(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Top):
        return "T"
    if isinstance(f, Bot):
        return "F"
    op = type(f)
    prec = _PREC[op]
    left, right = print_formula(f.left), print_formula(f.right)
    lp = _PREC.get(type(f.left), 99)
    rp = _PREC.get(type(f.right), 99)
    if op is Impl:
        # right associative
        if lp <= prec:
            left = f"({left})"
        if rp < prec:
            right = f"({right})"
    else:
        if lp < prec:
            left = f"({left})"
        if rp <= prec:
            right = f"({right})"
    return f"{left} {_BINARY[op]} {right}"


def formula_key(f: Formula) -> str:
    """Total order on formulas used for canonical multisets."""
    return print_formula(f)


# -- multisets ----------------------------------------------------------------

Member = Union[Formula, "Sequent"]


def member_key(m: Member) -> tuple:
    if isinstance(m, Sequent):
        return (1, print_sequent(m))
    return (0, formula_key(m))


def msort(items: Iterable[Member]) -> tuple:
    return tuple(sorted(items, key=member_key))


def mcontains(big: Iterable, small: Iterable) -> bool:
    return not (Counter(small) - Counter(big))


def mdiff(big: Iterable, small: Iterable) -> tuple | None:
    """``big - small`` as a canonical tuple, or None if small is not a sub-multiset."""
    b, s = Counter(big), Counter(small)
    if s - b:
        return None
    return msort((b - s).elements())


def mremove(items: Iterable, x) -> tuple:
    out = list(items)
    out.remove(x)
    return tuple(out)


def dedupe(items: Iterable) -> tuple:
    return msort(set(items))


def big_and(fs: Iterable[Formula]) -> Formula:
    """Right fold with unit T over the canonical order."""
    out: Formula = TOP
    for f in reversed(msort(fs)):
        out = And(f, out)
    return out


def big_or(fs: Iterable[Formula]) -> Formula:
    out: Formula = BOT
    for f in reversed(msort(fs)):
        out = Or(f, out)
    return out


def unfold_and(f: Formula) -> list[Formula] | None:
    """Inverse of big_and up to order: the conjuncts of a T-terminated right fold."""
    out = []
    while isinstance(f, And):
        out.append(f.left)
        f = f.right
    return out if isinstance(f, Top) else None


def unfold_or(f: Formula) -> list[Formula] | None:
    out = []
    while isinstance(f, Or):
        out.append(f.left)
        f = f.right
    return out if isinstance(f, Bot) else None


# -- sequents -----------------------------------------------------------------

@dataclass(frozen=True)
class Sequent:
    """A pair of multisets.  Members are formulas, or sequents when nested.

    Both sides are stored canonically sorted, so ``==`` is multiset equality
    (recursively for nested members).
    """

    ante: tuple = ()
    succ: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", msort(self.ante))
        object.__setattr__(self, "succ", msort(self.succ))

    def __str__(self) -> str:
        return print_sequent(self)

    @property
    def is_flat(self) -> bool:
        return not any(isinstance(m, Sequent) for m in self.ante + self.succ)

    def formulas(self, side: str) -> tuple:
        return tuple(m for m in getattr(self, side) if not isinstance(m, Sequent))

    def nested(self, side: str) -> tuple:
        return tuple(m for m in getattr(self, side) if isinstance(m, Sequent))

    def atoms(self) -> set[str]:
        out: set[str] = set()
        for m in self.ante + self.succ:
            out |= m.atoms() if isinstance(m, Sequent) else atoms(m)
        return out


NestedSequent = Sequent


def _print_member(m: Member) -> str:
    if isinstance(m, Sequent):
        return f"[{print_sequent(m)}]"
    return print_formula(m)


@lru_cache(maxsize=None)
def print_sequent(s: Sequent) -> str:
    left = ", ".join(_print_member(m) for m in s.ante)
    right = ", ".join(_print_member(m) for m in s.succ)
    if not left:
        return f"|- {right}" if right else "|-"
    return f"{left} |- {right}" if right else f"{left} |-"


def set_normal(s: Sequent) -> Sequent:
    """Collapse multiplicities, recursively; used for loop checking."""
    return Sequent(
        dedupe(set_normal(m) if isinstance(m, Sequent) else m for m in s.ante),
        dedupe(set_normal(m) if isinstance(m, Sequent) else m for m in s.succ),
    )


# -- parsing ------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<op>\|-|->|-<|&|\||!|~|\(|\)|,|\[|\]|>|:)|(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<bad>\S))"
)
_ATOM = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Tokens:
    def __init__(self, text: str):
        self.text = text
        self.items: list[tuple[str, int]] = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if m is None:  # trailing whitespace
                break
            if m.group("bad"):
                raise ParseError(f"unexpected character {m.group('bad')!r}", text, m.start("bad"))
            tok = m.group("op") or m.group("id")
            if tok is None:
                break
            self.items.append((tok, m.start("op") if m.group("op") else m.start("id")))
            pos = m.end()
        self.i = 0

    def peek(self) -> str | None:
        return self.items[self.i][0] if self.i < len(self.items) else None

    def pos(self) -> int:
        return self.items[self.i][1] if self.i < len(self.items) else len(self.text)

    def next(self) -> str:
        if self.i >= len(self.items):
            raise ParseError("unexpected end of input", self.text, len(self.text))
        tok = self.items[self.i][0]
        self.i += 1
        return tok

    def expect(self, tok: str) -> None:
        pos = self.pos()
        got = self.next()
        if got != tok:
            raise ParseError(f"expected {tok!r}, got {got!r}", self.text, pos)

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.text, self.pos())

    def done(self) -> None:
        if self.peek() is not None:
            tok = self.peek()
            if tok == ")":
                raise self.error("unbalanced parentheses")
            raise self.error(f"unexpected token {tok!r}")


def _parse_impl(ts: Tokens) -> Formula:
    left = _parse_excl(ts)
    if ts.peek() == "->":
        ts.next()
        return Impl(left, _parse_impl(ts))
    return left


def _parse_left_assoc(ts: Tokens, op: str, cls, sub) -> Formula:
    left = sub(ts)
    while ts.peek() == op:
        ts.next()
        left = cls(left, sub(ts))
    return left


def _parse_excl(ts: Tokens) -> Formula:
    return _parse_left_assoc(ts, "-<", Excl, _parse_or)


def _parse_or(ts: Tokens) -> Formula:
    return _parse_left_assoc(ts, "|", Or, _parse_and)


def _parse_and(ts: Tokens) -> Formula:
    return _parse_left_assoc(ts, "&", And, _parse_unary)


def _parse_unary(ts: Tokens) -> Formula:
    pos = ts.pos()
    tok = ts.peek()
    if tok is None:
        raise ts.error("unexpected end of input, expected a formula")
    if tok == "!":
        ts.next()
        return Impl(_parse_unary(ts), BOT)
    if tok == "~":
        ts.next()
        return Excl(TOP, _parse_unary(ts))
    if tok == "(":
        ts.next()
        f = _parse_impl(ts)
        if ts.peek() != ")":
            raise ParseError("unbalanced parentheses", ts.text, ts.pos())
        ts.next()
        return f
    ts.next()
    if tok == "T":
        return TOP
    if tok == "F":
        return BOT
    if _ATOM.match(tok):
        return Atom(tok)
    if tok in ("&", "|", "->", "-<"):
        raise ParseError(f"operator {tok!r} is missing its left operand", ts.text, pos)
    raise ParseError(f"unexpected token {tok!r}", ts.text, pos)


def parse_formula(text: str) -> Formula:
    ts = Tokens(text)
    f = _parse_impl(ts)
    ts.done()
    return f


def _parse_members(ts: Tokens, stop: set, nested: bool) -> list:
    out: list = []
    if ts.peek() in stop:
        return out
    while True:
        if ts.peek() == "[":
            if not nested:
                raise ts.error("nested sequent not allowed here")
            ts.next()
            out.append(_parse_nested_body(ts))
            ts.expect("]")
        else:
            out.append(_parse_impl(ts))
        if ts.peek() != ",":
            return out
        ts.next()


def _parse_nested_body(ts: Tokens, nested: bool = True) -> Sequent:
    ante = _parse_members(ts, {"|-"}, nested)
    if ts.peek() != "|-":
        raise ts.error("expected '|-'")
    ts.next()
    succ = _parse_members(ts, {None, "]"}, nested)
    return Sequent(tuple(ante), tuple(succ))


def parse_sequent(text: str) -> Sequent:
    """Parse a standard (flat) sequent ``A, B |- C``."""
    ts = Tokens(text)
    s = _parse_nested_body(ts, nested=False)
    ts.done()
    return s


def parse_nested_sequent(text: str) -> Sequent:
    ts = Tokens(text)
    s = _parse_nested_body(ts)
    ts.done()
    return s


# -- duality ------------------------------------------------------------------

def dual(f: Formula) -> Formula:
    """Order-reversing duality: swaps & with |, T with F and A -> B with B' -< A'."""
    if isinstance(f, Atom):
        return f
    if isinstance(f, Top):
        return BOT
    if isinstance(f, Bot):
        return TOP
    if isinstance(f, And):
        return Or(dual(f.left), dual(f.right))
    if isinstance(f, Or):
        return And(dual(f.left), dual(f.right))
    if isinstance(f, Impl):
        return Excl(dual(f.right), dual(f.left))
    return Impl(dual(f.right), dual(f.left))


def dual_sequent(s: Sequent) -> Sequent:
    def d(m):
        return dual_sequent(m) if isinstance(m, Sequent) else dual(m)

    return Sequent(tuple(map(d, s.succ)), tuple(map(d, s.ante)))
