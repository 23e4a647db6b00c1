"""The nested sequent calculus N-LBiI.

All rules of the standard calculus apply to nested sequents, with nested
members as inert context.  Four structural rules move material in and out
of nested members::

    nestL    G, [G0 |- D0] |- D      from  G0 |- D0, D
    nestR    G |- [G0 |- D0], D      from  G, G0 |- D0
    unnestL  G, G0 |- D0, D          from  G, [G0 |- D0] |- D
    unnestR  G, G0 |- D0, D          from  G |- [G0 |- D0], D

No contraction is built into unnestL/unnestR.
"""

from __future__ import annotations

from .derivation import CheckError, CutPolicy, Derivation
from .lbii import _Search, _axioms, _eager_step, _formulas, arity, logical_premises, premises_for, S
from .syntax import Excl, Impl, ParseError, Sequent, mremove

NEST_RULES = ("nestL", "nestR", "unnestL", "unnestR")
RULES = (
    "hyp", "cut", "weakL", "weakR", "contrL", "contrR", "topL", "topR", "botL", "botR",
    "andL", "andR", "orL", "orR", "implL", "implR", "exclL", "exclR",
) + NEST_RULES


def _nested_members(side) -> list:
    return list(dict.fromkeys(m for m in side if isinstance(m, Sequent)))


def nest_premises(rule: str, c: Sequent) -> list[Sequent]:
    """Premises of nestL/nestR for each nested member of c."""
    out = []
    if rule == "nestL":
        for n in _nested_members(c.ante):
            out.append(S(n.ante, n.succ + c.succ))
    else:
        for n in _nested_members(c.succ):
            out.append(S(c.ante + n.ante, n.succ))
    return out


def unnest_conclusions(rule: str, p: Sequent) -> list[Sequent]:
    """Conclusions of unnestL/unnestR for each nested member of premise p."""
    out = []
    side = p.ante if rule == "unnestL" else p.succ
    for n in _nested_members(side):
        if rule == "unnestL":
            out.append(S(mremove(p.ante, n) + n.ante, n.succ + p.succ))
        else:
            out.append(S(p.ante + n.ante, n.succ + mremove(p.succ, n)))
    return out


def check_node(node: Derivation, cuts: CutPolicy) -> str | None:
    rule, c = node.rule, node.conclusion
    prem = tuple(p.conclusion for p in node.premises)
    if rule not in RULES:
        return f"unknown rule {rule!r}"
    if len(prem) != arity(rule):
        return f"wrong premise count: {rule} has {arity(rule)}, got {len(prem)}"
    if rule == "cut" and cuts is CutPolicy.NONE:
        return "forbidden cut"
    if rule in ("nestL", "nestR"):
        cands = nest_premises(rule, c)
        if not cands:
            return f"{rule}: no nested member in the {'antecedent' if rule == 'nestL' else 'succedent'}"
        return None if prem[0] in cands else "premises do not match the rule schema (context mismatch)"
    if rule in ("unnestL", "unnestR"):
        cands = unnest_conclusions(rule, prem[0])
        if not cands:
            return f"{rule}: premise has no nested member in the {'antecedent' if rule == 'unnestL' else 'succedent'}"
        return None if c in cands else "conclusion is not the premise with a nested member unpacked"
    try:
        cands = logical_premises(rule, c, node.meta)
    except ParseError as e:
        return f"bad annotation: {e.message}"
    if isinstance(cands, str):
        return cands
    return None if prem in cands else "premises do not match the rule schema (context mismatch)"


def check_nlbii(d: Derivation, cuts="full") -> None:
    """Raise CheckError listing every node that does not instantiate its rule."""
    cuts = CutPolicy.coerce(cuts)
    if cuts is CutPolicy.UNNEST:
        raise ValueError("unnest-cut-only applies to the standard calculus")
    problems = []
    for path, n in d.nodes():
        msg = check_node(n, cuts)
        if msg:
            problems.append((path, msg))
    if problems:
        raise CheckError(problems)


def is_nlbii_derivation(d: Derivation, cuts="full") -> bool:
    try:
        check_nlbii(d, cuts)
    except CheckError:
        return False
    return True


# -- cut-free search ------------------------------------------------------------------

def _chain(steps, top_rule, top_concl):
    """Builder for a unary chain of (rule, conclusion, meta) above which top_rule sits."""

    def build(subs):
        d = Derivation(top_rule, top_concl, tuple(subs))
        for rule, concl, meta in reversed(steps):
            d = Derivation(rule, concl, (d,), meta)
        return d

    return build


def _split(g0, d0) -> tuple:
    return (("split", str(S(g0, d0))),)


def _right_options(s: Sequent, principal, rule: str, goal_of):
    """implR/nestR on a succedent principal, optionally after moving the context inward.

    ``goal_of(t)`` gives the premise of the rule applied to t.
    """
    rest = mremove(s.succ, principal)
    yield _chain([], rule, s), (goal_of(s),), 1
    if not rest:
        return
    # move: G |- P, D'  <-  unnestL  [G |- D'] |- P
    inner = S(s.ante, rest)
    t = S((inner,), (principal,))
    yield _chain([("unnestL", s, _split(s.ante, rest))], rule, t), (goal_of(t),), 2
    # copy: duplicate the antecedent formulas first so they stay available outside
    forms = _formulas(s.ante)
    if not forms:
        return
    steps, cur = [], s
    for f in s.formulas("ante"):
        steps.append(("contrL", cur, ()))
        cur = S(cur.ante + (f,), cur.succ)
    g0 = s.formulas("ante") + s.nested("ante")
    outer = s.formulas("ante")
    t = S(outer + (S(g0, rest),), (principal,))
    steps.append(("unnestL", cur, _split(g0, rest)))
    yield _chain(steps, rule, t), (goal_of(t),), len(steps) + 1


def _left_options(s: Sequent, principal, rule: str, goal_of):
    rest = mremove(s.ante, principal)
    yield _chain([], rule, s), (goal_of(s),), 1
    if not rest:
        return
    inner = S(rest, s.succ)
    t = S((principal,), (inner,))
    yield _chain([("unnestR", s, _split(rest, s.succ))], rule, t), (goal_of(t),), 2
    if not _formulas(s.succ):
        return
    steps, cur = [], s
    for f in s.formulas("succ"):
        steps.append(("contrR", cur, ()))
        cur = S(cur.ante, cur.succ + (f,))
    d0 = s.formulas("succ") + s.nested("succ")
    outer = s.formulas("succ")
    t = S((principal,), outer + (S(rest, d0),))
    steps.append(("unnestR", cur, _split(rest, d0)))
    yield _chain(steps, rule, t), (goal_of(t),), len(steps) + 1


def _branching_steps(s: Sequent):
    for f in _formulas(s.ante):
        if isinstance(f, Impl) and f.left not in s.succ:
            yield _chain([], "implL", s), premises_for("implL", s, f), 1
    for f in _formulas(s.succ):
        if isinstance(f, Excl) and f.right not in s.ante:
            yield _chain([], "exclR", s), premises_for("exclR", s, f), 1
    for f in _formulas(s.succ):
        if isinstance(f, Impl):
            yield from _right_options(s, f, "implR", lambda t, f=f: premises_for("implR", t, f)[0])
    for n in _nested_members(s.succ):
        yield from _right_options(s, n, "nestR", lambda t, n=n: _nest_goal_right(t, n))
    for f in _formulas(s.ante):
        if isinstance(f, Excl):
            yield from _left_options(s, f, "exclL", lambda t, f=f: premises_for("exclL", t, f)[0])
    for n in _nested_members(s.ante):
        yield from _left_options(s, n, "nestL", lambda t, n=n: S(n.ante, n.succ + t.succ))


def _nest_goal_right(t: Sequent, n: Sequent) -> Sequent:
    return S(t.ante + n.ante, n.succ)


def search_nlbii_cutfree(s: Sequent, depth: int) -> Derivation | None:
    """Iterative-deepening cut-free search; None means exhausted within depth.

    implR/nestR may first move the antecedent (or a copy of its formulas) and
    the rest of the succedent into a nested member with unnestL, and dually
    for exclL/nestL with unnestR; every node counts towards the depth.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    search = _Search(_axioms, _eager_step, _branching_steps)
    for bound in range(1, depth + 1):
        d = search.prove(s, bound, frozenset())
        if d is not None:
            return d
    return None
