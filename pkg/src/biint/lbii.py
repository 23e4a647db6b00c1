"""The standard-style calculus LBiI.

Rules are checked exactly as written: weakening and contraction only happen
at explicit ``weakL``/``weakR``/``contrL``/``contrR`` nodes, the premise of
``implR`` keeps no succedent context and the premise of ``exclL`` keeps no
antecedent context.

Besides the basic rules the checker knows the restricted cuts
``unnestcutL``/``unnestcutR`` and, when ``extended=True``, the derived
cut-free rules ``unnestL``/``unnestR``.
"""

from __future__ import annotations

from collections import Counter

from .derivation import CheckError, CutPolicy, Derivation
from .syntax import (
    BOT,
    TOP,
    And,
    Excl,
    Formula,
    Impl,
    Or,
    ParseError,
    Sequent,
    big_and,
    big_or,
    dual,
    dual_sequent,
    mcontains,
    mdiff,
    mremove,
    parse_formula,
    parse_sequent,
    print_formula,
    set_normal,
    unfold_and,
    unfold_or,
)

BASIC_RULES = (
    "hyp", "cut", "weakL", "weakR", "contrL", "contrR", "topL", "topR", "botL", "botR",
    "andL", "andR", "orL", "orR", "implL", "implR", "exclL", "exclR",
)
CUT_RULES = ("cut", "unnestcutL", "unnestcutR")
EXTENDED_RULES = ("unnestL", "unnestR")
RULES = BASIC_RULES + ("unnestcutL", "unnestcutR") + EXTENDED_RULES

_ARITY = {
    "hyp": 0, "topR": 0, "botL": 0,
    "cut": 2, "andR": 2, "orL": 2, "implL": 2, "exclR": 2,
    "unnestcutL": 2, "unnestcutR": 2,
}


def arity(rule: str) -> int:
    return _ARITY.get(rule, 1)


def S(ante, succ) -> Sequent:
    return Sequent(tuple(ante), tuple(succ))


def _formulas(side) -> list:
    seen, out = set(), []
    for m in side:
        if not isinstance(m, Sequent) and m not in seen:
            seen.add(m)
            out.append(m)
    return out


def logical_premises(rule: str, c: Sequent, meta) -> list[tuple[Sequent, ...]] | str:
    """Candidate premise lists for a basic logical or structural rule with conclusion c.

    Works on nested sequents too (nested members are inert context).  Returns
    a message when no principal formula of the right shape exists.
    """
    G, D = c.ante, c.succ
    out: list[tuple[Sequent, ...]] = []

    def principals(side, cls):
        return [f for f in _formulas(side) if isinstance(f, cls)]

    if rule == "hyp":
        common = set(_formulas(G)) & set(_formulas(D))
        return [()] if common else "hyp needs a formula on both sides"
    if rule == "topR":
        return [()] if TOP in D else "no T in succedent"
    if rule == "botL":
        return [()] if BOT in G else "no F in antecedent"
    if rule == "cut":
        text = _meta(meta, "cut-formula")
        if text is None:
            return "cut node needs a :cut-formula annotation"
        a = parse_formula(text)
        return [(S(G, D + (a,)), S(G + (a,), D))]
    if rule in ("weakL", "contrL", "weakR", "contrR"):
        side = G if rule.endswith("L") else D
        for a in _formulas(side):
            if rule == "weakL":
                out.append((S(mremove(G, a), D),))
            elif rule == "weakR":
                out.append((S(G, mremove(D, a)),))
            elif rule == "contrL":
                out.append((S(G + (a,), D),))
            else:
                out.append((S(G, D + (a,)),))
        return out or f"{rule}: empty side"
    if rule == "topL":
        return [(S(mremove(G, TOP), D),)] if TOP in G else "no T in antecedent"
    if rule == "botR":
        return [(S(G, mremove(D, BOT)),)] if BOT in D else "no F in succedent"
    table = {
        "andL": ("ante", And), "andR": ("succ", And), "orL": ("ante", Or), "orR": ("succ", Or),
        "implL": ("ante", Impl), "implR": ("succ", Impl), "exclL": ("ante", Excl), "exclR": ("succ", Excl),
    }
    if rule not in table:
        return f"unknown rule {rule!r}"
    side, cls = table[rule]
    for f in principals(G if side == "ante" else D, cls):
        a, b = f.left, f.right
        G1, D1 = (mremove(G, f), D) if side == "ante" else (G, mremove(D, f))
        if rule == "andL":
            out.append((S(G1 + (a, b), D1),))
        elif rule == "andR":
            out.append((S(G1, D1 + (a,)), S(G1, D1 + (b,))))
        elif rule == "orL":
            out.append((S(G1 + (a,), D1), S(G1 + (b,), D1)))
        elif rule == "orR":
            out.append((S(G1, D1 + (a, b)),))
        elif rule == "implL":
            out.append((S(G, D1 + (a,)), S(G1 + (b,), D1)))
        elif rule == "implR":
            out.append((S(G1 + (a,), (b,)),))
        elif rule == "exclL":
            out.append((S((a,), D1 + (b,)),))
        elif rule == "exclR":
            out.append((S(G1, D1 + (a,)), S(G1 + (b,), D)))
    if not out:
        return f"{rule}: no principal {cls.__name__} formula in the {'antecedent' if side == 'ante' else 'succedent'}"
    return out


def _meta(meta, key):
    for k, v in meta:
        if k == key:
            return v
    return None


def split_of(cut_formula: Formula, concl: Sequent, kind: type) -> tuple[tuple, tuple] | None:
    """(Gamma0, Delta0) if cut_formula is /\\Gamma0 (kind) \\/Delta0 over parts of concl."""
    if not isinstance(cut_formula, kind):
        return None
    g0, d0 = unfold_and(cut_formula.left), unfold_or(cut_formula.right)
    if g0 is None or d0 is None:
        return None
    if mcontains(concl.ante, g0) and mcontains(concl.succ, d0):
        return tuple(g0), tuple(d0)
    return None


def unnest_cut_kind(node: Derivation) -> str | None:
    """'L' or 'R' if the cut node has one of the two unnest-cut shapes."""
    text = node.get("cut-formula")
    if text is None:
        return None
    a = parse_formula(text)
    for kind, cls in (("L", Excl), ("R", Impl)):
        if split_of(a, node.conclusion, cls) is not None:
            return kind
    return None


def _check_derived_unnest(rule: str, c: Sequent, premises, meta) -> str | None:
    if len(premises) != 1:
        return f"wrong premise count: {rule} has 1 premise, got {len(premises)}"
    p = premises[0]
    if rule == "unnestL":
        extra, same = mdiff(p.ante, c.ante), Counter(p.succ) == Counter(c.succ)
        kind = Excl
    else:
        extra, same = mdiff(p.succ, c.succ), Counter(p.ante) == Counter(c.ante)
        kind = Impl
    if extra is None or len(extra) != 1 or not same:
        return f"{rule}: premise must add exactly one formula to the conclusion"
    split = split_of(extra[0], c, kind)
    if split is None:
        return f"{rule}: added formula is not of the form /\\G0 {'-<' if kind is Excl else '->'} \\/D0 over the conclusion"
    want = _meta(meta, "split")
    if want is not None:
        s = parse_sequent(want)
        if Counter(s.ante) != Counter(split[0]) or Counter(s.succ) != Counter(split[1]):
            return f"{rule}: :split annotation does not match the added formula"
    return None


def check_node(node: Derivation, cuts: CutPolicy, extended: bool = False) -> str | None:
    """Message describing why a single LBiI node is wrong, or None."""
    rule, c, premises = node.rule, node.conclusion, node.premises
    for s in (c, *(p.conclusion for p in premises)):
        if not isinstance(s, Sequent) or not s.is_flat:
            return "not a standard sequent"
    if rule in CUT_RULES and cuts is CutPolicy.NONE:
        return "forbidden cut"
    if rule in EXTENDED_RULES:
        if not extended:
            return f"{rule} is a derived rule, not part of LBiI"
        return _check_derived_unnest(rule, c, [p.conclusion for p in premises], node.meta)
    if rule not in RULES:
        return f"unknown rule {rule!r}"
    if len(premises) != arity(rule):
        return f"wrong premise count: {rule} has {arity(rule)}, got {len(premises)}"
    if rule in CUT_RULES:
        try:
            kind = unnest_cut_kind(node)
        except ParseError as e:
            return f"bad cut formula: {e.message}"
        if rule == "unnestcutL" and kind != "L" or rule == "unnestcutR" and kind != "R":
            return f"cut formula does not have the {rule} shape"
        if cuts is CutPolicy.UNNEST and kind is None:
            return "forbidden cut: only unnest cuts are allowed"
        rule = "cut"
    try:
        cands = logical_premises(rule, c, node.meta)
    except ParseError as e:
        return f"bad annotation: {e.message}"
    if isinstance(cands, str):
        return cands
    actual = tuple(p.conclusion for p in premises)
    if any(cand == actual for cand in cands):
        return None
    return "premises do not match the rule schema (context mismatch)"


def check_lbii(d: Derivation, cuts="full", extended: bool = False) -> None:
    """Raise CheckError listing every node that does not instantiate its rule."""
    cuts = CutPolicy.coerce(cuts)
    problems = []
    for path, node in d.nodes():
        msg = check_node(node, cuts, extended)
        if msg:
            problems.append((path, msg))
    if problems:
        raise CheckError(problems)


def is_lbii_derivation(d: Derivation, cuts="full", extended: bool = False) -> bool:
    try:
        check_lbii(d, cuts, extended)
    except CheckError:
        return False
    return True


def cut_profile(d: Derivation) -> str:
    """'none', 'unnest-only' or 'general' according to the cut nodes of d."""
    cut_nodes = [n for _, n in d.nodes() if n.rule in CUT_RULES]
    if not cut_nodes:
        return "none"
    if all(unnest_cut_kind(n) for n in cut_nodes):
        return "unnest-only"
    return "general"


# -- derived unnest rules -----------------------------------------------------------

def unnest_formula(which: str, gamma0, delta0) -> Formula:
    cls = Excl if which == "L" else Impl
    return cls(big_and(gamma0), big_or(delta0))


def apply_unnest_rules(premise: Sequent, which: str, split: tuple) -> Sequent:
    """Conclusion of the derived unnestL/unnestR rule for the given (Gamma0, Delta0)."""
    gamma0, delta0 = split
    c = unnest_formula(which, gamma0, delta0)
    if which == "L":
        if c not in premise.ante:
            raise ValueError(f"unnestL premise lacks {print_formula(c)} in the antecedent")
        concl = S(mremove(premise.ante, c), premise.succ)
    elif which == "R":
        if c not in premise.succ:
            raise ValueError(f"unnestR premise lacks {print_formula(c)} in the succedent")
        concl = S(premise.ante, mremove(premise.succ, c))
    else:
        raise ValueError("which must be 'L' or 'R'")
    if not (mcontains(concl.ante, gamma0) and mcontains(concl.succ, delta0)):
        raise ValueError("split is not part of the conclusion")
    return concl


def _split_meta(gamma0, delta0) -> tuple:
    return (("split", str(S(gamma0, delta0))),)


# -- building blocks ----------------------------------------------------------------

def node(rule: str, concl: Sequent, *premises: Derivation, **meta) -> Derivation:
    return Derivation(rule, concl, premises, tuple((k.replace("_", "-"), v) for k, v in meta.items()))


def unfold_left(s: Sequent, f: Formula, top: Derivation) -> Derivation:
    """Chain of andL/topL taking s (containing the fold f) to s with f's conjuncts.

    ``top`` must end in the unfolded sequent.
    """
    chain = []
    cur = s
    while isinstance(f, And):
        nxt = S(mremove(cur.ante, f) + (f.left, f.right), cur.succ)
        chain.append(("andL", cur))
        cur, f = nxt, f.right
    if f != TOP:
        raise ValueError("not a T-terminated conjunction")
    chain.append(("topL", cur))
    d = top
    for rule, concl in reversed(chain):
        d = node(rule, concl, d)
    return d


def unfold_right(s: Sequent, f: Formula, top: Derivation) -> Derivation:
    chain = []
    cur = s
    while isinstance(f, Or):
        nxt = S(cur.ante, mremove(cur.succ, f) + (f.left, f.right))
        chain.append(("orR", cur))
        cur, f = nxt, f.right
    if f != BOT:
        raise ValueError("not an F-terminated disjunction")
    chain.append(("botR", cur))
    d = top
    for rule, concl in reversed(chain):
        d = node(rule, concl, d)
    return d


def unfolded(s: Sequent, f: Formula, side: str) -> Sequent:
    if side == "ante":
        return S(mremove(s.ante, f) + tuple(unfold_and(f)), s.succ)
    return S(s.ante, mremove(s.succ, f) + tuple(unfold_or(f)))


def prove_conjunction(s: Sequent, f: Formula) -> Derivation:
    """andR*/topR/hyp proof of s where f is in the succedent and its conjuncts in the antecedent."""
    if f == TOP:
        return node("topR", s)
    if not isinstance(f, And):
        return node("hyp", s)
    rest = mremove(s.succ, f)
    left = S(s.ante, rest + (f.left,))
    right = S(s.ante, rest + (f.right,))
    return node("andR", s, node("hyp", left), prove_conjunction(right, f.right))


def prove_disjunction(s: Sequent, f: Formula) -> Derivation:
    """orL*/botL/hyp proof of s where f is in the antecedent and its disjuncts in the succedent."""
    if f == BOT:
        return node("botL", s)
    if not isinstance(f, Or):
        return node("hyp", s)
    rest = mremove(s.ante, f)
    left = S(rest + (f.left,), s.succ)
    right = S(rest + (f.right,), s.succ)
    return node("orL", s, node("hyp", left), prove_disjunction(right, f.right))


def weaken(s: Sequent, target: Sequent, top: Derivation) -> Derivation:
    """weakL*/weakR* chain from s down... i.e. s is the conclusion, target the premise."""
    extra_l = mdiff(s.ante, target.ante)
    extra_r = mdiff(s.succ, target.succ)
    if extra_l is None or extra_r is None:
        raise ValueError("target is not a sub-sequent")
    steps = []
    cur = s
    for f in extra_l:
        steps.append(("weakL", cur))
        cur = S(mremove(cur.ante, f), cur.succ)
    for f in extra_r:
        steps.append(("weakR", cur))
        cur = S(cur.ante, mremove(cur.succ, f))
    d = top
    for rule, concl in reversed(steps):
        d = node(rule, concl, d)
    return d


# -- cut permutation ------------------------------------------------------------------

def permute_cut(d: Derivation) -> Derivation:
    """Permute a root cut past implR (or, dually, exclL) using the derived unnest rules.

    The root must be a cut whose right premise ends in implR with the cut
    formula as side formula, or a cut whose left premise ends in exclL.
    The result proves the same sequent and checks with ``extended=True``.
    """
    if d.rule != "cut" or len(d.premises) != 2:
        raise ValueError("root is not a cut")
    a = parse_formula(d.get("cut-formula"))
    left, right = d.premises
    concl = d.conclusion
    if right.rule == "implR":
        return _permute_impl(concl, a, left, right)
    if left.rule == "exclL":
        return _permute_excl(concl, a, left, right)
    raise ValueError("cut is not above implR (right premise) or exclL (left premise)")


def _permute_impl(concl, a, left, right) -> Derivation:
    # right premise: Gamma, A |- C -> D, Delta from Gamma, A, C |- D
    imps = [f for f in _formulas(right.conclusion.succ) if isinstance(f, Impl)]
    for cd in imps:
        gamma = mdiff(right.conclusion.ante, (a,))
        delta = mdiff(right.conclusion.succ, (cd,))
        if gamma is None or delta is None:
            continue
        if S(gamma + (a, cd.left), (cd.right,)) != right.premises[0].conclusion:
            continue
        if S(gamma, delta + (cd,)) != concl:
            continue
        break
    else:
        raise ValueError("right premise is not an implR with the cut formula as side formula")
    pi1, pi2 = left, right.premises[0]
    c, dd = cd.left, cd.right
    e = unnest_formula("L", gamma, delta + (cd,))
    s_impl = S(gamma + (e,), delta + (cd,))
    s_cut = S(gamma + (e, c), (dd,))
    s_excl = S(gamma + (e, c), (a, dd))
    s_unfold = S((e.left,), (e.right, a, dd))
    s_weak = S(gamma, delta + (cd, a, dd))
    s_weakl = S(gamma + (e, c, a), (dd,))
    block = unfold_left(s_unfold, e.left, unfold_right(unfolded(s_unfold, e.left, "ante"), e.right,
                                                         node("weakR", s_weak, pi1)))
    cut = node("cut", s_cut, node("exclL", s_excl, block), node("weakL", s_weakl, pi2),
               cut_formula=print_formula(a))
    return Derivation("unnestL", concl, (node("implR", s_impl, cut),), _split_meta(gamma, delta + (cd,)))


def _permute_excl(concl, a, left, right) -> Derivation:
    # left premise: Gamma, C -< D |- A, Delta from C |- D, A, Delta
    excls = [f for f in _formulas(left.conclusion.ante) if isinstance(f, Excl)]
    for cd in excls:
        gamma = mdiff(left.conclusion.ante, (cd,))
        delta = mdiff(left.conclusion.succ, (a,))
        if gamma is None or delta is None:
            continue
        if S((cd.left,), delta + (cd.right, a)) != left.premises[0].conclusion:
            continue
        if S(gamma + (cd,), delta) != concl:
            continue
        break
    else:
        raise ValueError("left premise is not an exclL with the cut formula as side formula")
    pi1, pi2 = left.premises[0], right
    c, dd = cd.left, cd.right
    e = unnest_formula("R", gamma + (cd,), delta)
    s_excl = S(gamma + (cd,), delta + (e,))
    s_cut = S((c,), delta + (dd, e))
    s_weakr = S((c,), delta + (a, dd, e))
    s_impl = S((c, a), delta + (dd, e))
    s_unfold = S((c, a, e.left), (e.right,))
    s_weak = S(gamma + (cd, c, a), delta)
    block = unfold_left(s_unfold, e.left, unfold_right(unfolded(s_unfold, e.left, "ante"), e.right,
                                                         node("weakL", s_weak, pi2)))
    cut = node("cut", s_cut, node("weakR", s_weakr, pi1), node("implR", s_impl, block),
               cut_formula=print_formula(a))
    return Derivation("unnestR", concl, (node("exclL", s_excl, cut),), _split_meta(gamma + (cd,), delta))


# -- duality ------------------------------------------------------------------------------

_DUAL_RULE = {
    "hyp": "hyp", "cut": "cut", "weakL": "weakR", "weakR": "weakL", "contrL": "contrR",
    "contrR": "contrL", "topL": "botR", "botR": "topL", "topR": "botL", "botL": "topR",
    "andL": "orR", "orR": "andL", "andR": "orL", "orL": "andR", "implL": "exclR",
    "exclR": "implL", "implR": "exclL", "exclL": "implR",
    "unnestcutL": "unnestcutR", "unnestcutR": "unnestcutL",
}
_SWAPPED = {"cut", "implL", "exclR", "unnestcutL", "unnestcutR"}


def dual_derivation(d: Derivation) -> Derivation:
    """Mirror image of an LBiI derivation: sides swapped, connectives dualised."""
    if d.rule not in _DUAL_RULE:
        raise ValueError(f"no dual for rule {d.rule!r}")
    premises = [dual_derivation(p) for p in d.premises]
    if d.rule in _SWAPPED:
        premises.reverse()
    meta = tuple(
        (k, print_formula(dual(parse_formula(v))) if k == "cut-formula" else v) for k, v in d.meta
    )
    return Derivation(_DUAL_RULE[d.rule], dual_sequent(d.conclusion), tuple(premises), meta)


# -- cut-free search --------------------------------------------------------------------

_EAGER = (("andL", "ante", And), ("orR", "succ", Or), ("andR", "succ", And), ("orL", "ante", Or))


class _Search:
    """Depth-bounded root-first search; depth counts every rule application."""

    def __init__(self, axioms, eager, branching, normal=set_normal):
        self.normal = normal
        self.axioms = axioms
        self.eager = eager
        self.branching = branching
        self.proved: dict = {}

    def prove(self, s, budget: int, history: frozenset):
        if budget <= 0:
            return None
        key = self.normal(s)
        if key in history:
            return None
        hit = self.proved.get((s, budget))
        if hit is not None:
            return hit
        for rule in self.axioms(s):
            return node(rule, s)
        history = history | {key}
        step = self.eager(s)
        if step is not None:
            d = self._close(step, budget, history)
            if d is not None:
                self.proved[(s, budget)] = d
            return d
        for step in self.branching(s):
            d = self._close(step, budget, history)
            if d is not None:
                self.proved[(s, budget)] = d
                return d
        return None

    def _close(self, step, budget, history):
        build, goals, cost = step if len(step) == 3 else (*step, 1)
        subs = []
        for g in goals:
            d = self.prove(g, budget - cost, history)
            if d is None:
                return None
            subs.append(d)
        return build(subs)


def _axioms(s: Sequent):
    if set(_formulas(s.ante)) & set(_formulas(s.succ)):
        yield "hyp"
    elif TOP in s.succ:
        yield "topR"
    elif BOT in s.ante:
        yield "botL"


def _step(rule: str, s: Sequent, premises: tuple, meta=()):
    return (lambda subs: Derivation(rule, s, tuple(subs), meta)), premises


def premises_for(rule: str, s: Sequent, f: Formula) -> tuple:
    """Premises of a logical rule applied to principal formula f of s."""
    G, D = s.ante, s.succ
    a, b = f.left, f.right
    if rule == "andL":
        return (S(mremove(G, f) + (a, b), D),)
    if rule == "orR":
        return (S(G, mremove(D, f) + (a, b)),)
    if rule == "andR":
        rest = mremove(D, f)
        return (S(G, rest + (a,)), S(G, rest + (b,)))
    if rule == "orL":
        rest = mremove(G, f)
        return (S(rest + (a,), D), S(rest + (b,), D))
    if rule == "implL":
        return (S(G, D + (a,)), S(mremove(G, f) + (b,), D))
    if rule == "exclR":
        return (S(G, mremove(D, f) + (a,)), S(G + (b,), D))
    if rule == "implR":
        return (S(G + (a,), (b,)),)
    if rule == "exclL":
        return (S((a,), D + (b,)),)
    raise ValueError(f"not a logical rule: {rule}")


def _eager_step(s: Sequent):
    if TOP in s.ante:
        return _step("topL", s, (S(mremove(s.ante, TOP), s.succ),))
    if BOT in s.succ:
        return _step("botR", s, (S(s.ante, mremove(s.succ, BOT)),))
    for rule, side, cls in _EAGER:
        for f in _formulas(getattr(s, side)):
            if isinstance(f, cls):
                return _step(rule, s, premises_for(rule, s, f))
    return None


def _branching_steps(s: Sequent):
    for f in _formulas(s.ante):
        if isinstance(f, Impl) and f.left not in s.succ:
            yield _step("implL", s, premises_for("implL", s, f))
    for f in _formulas(s.succ):
        if isinstance(f, Excl) and f.right not in s.ante:
            yield _step("exclR", s, premises_for("exclR", s, f))
    for f in _formulas(s.succ):
        if isinstance(f, Impl):
            yield _step("implR", s, premises_for("implR", s, f))
    for f in _formulas(s.ante):
        if isinstance(f, Excl):
            yield _step("exclL", s, premises_for("exclL", s, f))


def search_lbii_cutfree(s: Sequent, depth: int) -> Derivation | None:
    """Iterative-deepening cut-free proof search; None means exhausted within depth.

    Conjunction/disjunction and unit rules are applied eagerly; implL, exclR,
    implR and exclL are branched over.  A branch is abandoned when its
    sequent, with multiplicities collapsed, repeats an ancestor.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    search = _Search(_axioms, _eager_step, _branching_steps)
    for bound in range(1, depth + 1):
        d = search.prove(s, bound, frozenset())
        if d is not None:
            return d
    return None
