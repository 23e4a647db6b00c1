"""Translations between the standard, nested and labelled calculi.

Sequent level: ``flatten_sequent`` (nested to standard), ``lton``
(labelled to nested, choosing a root label) and ``ntol`` (nested to
labelled).  Derivation level: one translator per direction; each returns a
derivation whose end-sequent is the translation of the input end-sequent.
"""

from __future__ import annotations

from collections import Counter

from .derivation import Derivation
from .labelled import (
    L,
    LabelledSequent,
    LabelTree,
    fresh_label,
    lf_key,
    from_standard,
    merge_conclusion,
    merge_node,
    parse_lformula,
    print_lformula,
)
from .lbii import (
    EXTENDED_RULES,
    prove_conjunction,
    prove_disjunction,
    unfold_left,
    unfold_right,
    unfolded,
    weaken,
)
from .nested import RULES as NESTED_RULES
from .syntax import Excl, Formula, Impl, Sequent, big_and, big_or, parse_formula, print_formula

# -- flattening ------------------------------------------------------------------------


def flat_left(ctx) -> Formula:
    """The formula a nested antecedent context stands for (T when empty)."""
    return big_and(flat_left_context(ctx))


def flat_right(ctx) -> Formula:
    return big_or(flat_right_context(ctx))


def _member_left(m) -> Formula:
    return Excl(flat_left(m.ante), flat_right(m.succ)) if isinstance(m, Sequent) else m


def _member_right(m) -> Formula:
    return Impl(flat_left(m.ante), flat_right(m.succ)) if isinstance(m, Sequent) else m


def flat_left_context(ctx) -> tuple:
    return tuple(_member_left(m) for m in ctx)


def flat_right_context(ctx) -> tuple:
    return tuple(_member_right(m) for m in ctx)


def flatten_sequent(s: Sequent) -> Sequent:
    return Sequent(flat_left_context(s.ante), flat_right_context(s.succ))


# -- nested to standard ---------------------------------------------------------------

def _node(rule, concl, *premises, meta=()) -> Derivation:
    return Derivation(rule, concl, premises, meta)


def translate_nlbii_to_lbii(d: Derivation) -> Derivation:
    """Standard derivation of the flattened end-sequent.

    Nesting rules become implR/exclL followed by unfolding chains; each
    unnest rule becomes a cut on the flattened nested member.
    """
    concl = flatten_sequent(d.conclusion)
    subs = [translate_nlbii_to_lbii(p) for p in d.premises]
    rule = d.rule
    if rule in ("nestR", "nestL"):
        p = d.premises[0].conclusion
        n = _nest_member(rule, d.conclusion, p)
        lf, rf = flat_left(n.ante), flat_right(n.succ)
        if rule == "nestR":
            top = Sequent(concl.ante + (lf,), (rf,))
            principal = "implR"
        else:
            top = Sequent((lf,), (rf,) + concl.succ)
            principal = "exclL"
        inner = unfold_left(top, lf, unfold_right(unfolded(top, lf, "ante"), rf, subs[0]))
        return _node(principal, concl, inner)
    if rule in ("unnestL", "unnestR"):
        n = _unnest_member(rule, d.conclusion, d.premises[0].conclusion)
        lf, rf = flat_left(n.ante), flat_right(n.succ)
        if rule == "unnestL":
            c = Excl(lf, rf)
            left_s = Sequent(concl.ante, concl.succ + (c,))
            left = _node(
                "exclR", left_s,
                prove_conjunction(Sequent(concl.ante, concl.succ + (lf,)), lf),
                prove_disjunction(Sequent(concl.ante + (rf,), left_s.succ), rf),
            )
            right = weaken(Sequent(concl.ante + (c,), concl.succ), subs[0].conclusion, subs[0])
        else:
            c = Impl(lf, rf)
            left = weaken(Sequent(concl.ante, concl.succ + (c,)), subs[0].conclusion, subs[0])
            right_s = Sequent(concl.ante + (c,), concl.succ)
            right = _node(
                "implL", right_s,
                prove_conjunction(Sequent(right_s.ante, concl.succ + (lf,)), lf),
                prove_disjunction(Sequent(concl.ante + (rf,), concl.succ), rf),
            )
        return _node("cut", concl, left, right, meta=(("cut-formula", print_formula(c)),))
    if rule not in NESTED_RULES:
        raise ValueError(f"not a nested-calculus rule: {rule!r}")
    return Derivation(rule, concl, tuple(subs), d.meta)


def _nest_member(rule: str, c: Sequent, p: Sequent) -> Sequent:
    side = c.succ if rule == "nestR" else c.ante
    for n in dict.fromkeys(m for m in side if isinstance(m, Sequent)):
        want = Sequent(c.ante + n.ante, n.succ) if rule == "nestR" else Sequent(n.ante, n.succ + c.succ)
        if want == p:
            return n
    raise ValueError(f"{rule} node does not check")


def _unnest_member(rule: str, c: Sequent, p: Sequent) -> Sequent:
    side = p.ante if rule == "unnestL" else p.succ
    for n in dict.fromkeys(m for m in side if isinstance(m, Sequent)):
        if rule == "unnestL":
            want = Sequent(_remove(p.ante, n) + n.ante, n.succ + p.succ)
        else:
            want = Sequent(p.ante + n.ante, n.succ + _remove(p.succ, n))
        if want == c:
            return n
    raise ValueError(f"{rule} node does not check")


def embed_lbii_to_nlbii(d: Derivation) -> Derivation:
    """A standard derivation read as a nested one; restricted cuts become plain cuts."""
    if d.rule in EXTENDED_RULES:
        raise ValueError(f"{d.rule} is a derived rule and has no nested counterpart")
    rule = "cut" if d.rule in ("unnestcutL", "unnestcutR") else d.rule
    return Derivation(rule, d.conclusion, tuple(embed_lbii_to_nlbii(p) for p in d.premises), d.meta)


# -- labelled to nested ----------------------------------------------------------------

def _lton_at(ls: LabelledSequent, x, parent) -> Sequent:
    ante = list(ls.at("ante", x))
    succ = list(ls.at("succ", x))
    ante += [_lton_at(ls, y, x) for y in ls.tree.down(x) if y != parent]
    succ += [_lton_at(ls, y, x) for y in ls.tree.up(x) if y != parent]
    return Sequent(tuple(ante), tuple(succ))


def lton(ls: LabelledSequent, root) -> Sequent:
    """The nested sequent seen from label ``root``."""
    if root not in ls.tree.nodes:
        raise ValueError(f"unknown root label {root!r}")
    return _lton_at(ls, root, None)


def readdress(d: Derivation, ls: LabelledSequent, z, x) -> Derivation:
    """Turn a nested derivation of lton(ls, z) into one of lton(ls, x)."""
    if d.conclusion != lton(ls, z):
        raise ValueError("derivation does not end in the translation at the given root")
    path = ls.tree.path(x, z)
    for here, there in reversed(list(zip(path, path[1:]))):
        d = _readdress_step(d, ls, there, here)
    return d


def _readdress_step(d: Derivation, ls: LabelledSequent, y, x) -> Derivation:
    """From lton(ls, y) to lton(ls, x) for adjacent x, y."""
    inner_x = _lton_at(ls, x, y)
    inner_y = _lton_at(ls, y, x)
    if (x, y) in ls.tree.arcs:
        nest = Sequent((inner_x,), (inner_y,))
        return _node("unnestL", lton(ls, x), _node("nestR", nest, d))
    nest = Sequent((inner_y,), (inner_x,))
    return _node("unnestR", lton(ls, x), _node("nestL", nest, d))


def _lf_diff(a, b) -> list:
    return list((Counter(a) - Counter(b)).elements())


def _focus(d: Derivation):
    c = d.conclusion
    if d.rule == "hyp":
        return min(set(c.ante) & set(c.succ), key=lf_key)[0]
    if d.rule in ("topR", "botL"):
        side = c.succ if d.rule == "topR" else c.ante
        return min(x for x, a in side if print_formula(a) == ("T" if d.rule == "topR" else "F"))
    if d.rule == "cut":
        return parse_lformula(d.get("cut-formula"))[0]
    p = d.premises[0].conclusion
    changed = _lf_diff(c.ante, p.ante) + _lf_diff(p.ante, c.ante) + _lf_diff(c.succ, p.succ) + _lf_diff(p.succ, c.succ)
    return changed[0][0]


def translate_llbii_to_nlbii(d: Derivation, root) -> Derivation:
    """Nested derivation of lton(end-sequent, root)."""
    c = d.conclusion
    focus, local = _llbii_local(d)
    return readdress(local, c, focus, root)


def _llbii_local(d: Derivation):
    """(label, nested derivation of lton(conclusion, label)) for the last rule of d."""
    c = d.conclusion
    rule = d.rule
    if rule == "monotL":
        p = d.premises[0].conclusion
        (y, a), = _lf_diff(p.ante, c.ante)
        x = next(x for x in c.tree.down(y) if (x, a) in c.ante)
        X, Y = _lton_at(c, x, y), _lton_at(c, y, x)
        ih = translate_llbii_to_nlbii(d.premises[0], y)
        nest = _node("nestR", Sequent((X, a), (Y,)), ih)
        unnest = _node("unnestL", Sequent(X.ante + (a,), X.succ + (Y,)), nest)
        return x, _node("contrL", lton(c, x), unnest)
    if rule == "monotR":
        p = d.premises[0].conclusion
        (y, a), = _lf_diff(p.succ, c.succ)
        x = next(x for x in c.tree.up(y) if (x, a) in c.succ)
        X, Y = _lton_at(c, x, y), _lton_at(c, y, x)
        ih = translate_llbii_to_nlbii(d.premises[0], y)
        nest = _node("nestL", Sequent((Y,), (X, a)), ih)
        unnest = _node("unnestR", Sequent(X.ante + (Y,), X.succ + (a,)), nest)
        return x, _node("contrR", lton(c, x), unnest)
    if rule in ("implR", "exclL"):
        p = d.premises[0].conclusion
        (y,) = p.tree.nodes - c.tree.nodes
        if rule == "implR":
            (x, f), = _lf_diff(c.succ, p.succ)
            rest = L(c.tree, c.ante, _remove(c.succ, (x, f)))
            K = lton(rest, x)
            ih = translate_llbii_to_nlbii(d.premises[0], y)
            top = _node("implR", Sequent((K,), (f,)), ih)
            return x, _node("unnestL", lton(c, x), top)
        (x, f), = _lf_diff(c.ante, p.ante)
        rest = L(c.tree, _remove(c.ante, (x, f)), c.succ)
        K = lton(rest, x)
        ih = translate_llbii_to_nlbii(d.premises[0], y)
        top = _node("exclL", Sequent((f,), (K,)), ih)
        return x, _node("unnestR", lton(c, x), top)
    if rule in ("nodesplitU", "nodesplitD"):
        p = d.premises[0].conclusion
        (x,) = c.tree.nodes - p.tree.nodes
        if rule == "nodesplitU":
            y = next(y for y in c.tree.down(x) if y in p.tree.nodes and (y, x) in c.tree.arcs)
            Y, X = _lton_at(c, y, x), _lton_at(c, x, y)
            ih = translate_llbii_to_nlbii(d.premises[0], y)
            nl = _node("nestL", Sequent((Y,), X.succ), ih)
            nr = _node("nestR", Sequent((Y,), (X,)), nl)
            return y, _node("unnestL", lton(c, y), nr)
        y = next(y for y in c.tree.up(x) if y in p.tree.nodes)
        Y, X = _lton_at(c, y, x), _lton_at(c, x, y)
        ih = translate_llbii_to_nlbii(d.premises[0], y)
        nr = _node("nestR", Sequent(X.ante, (Y,)), ih)
        nl = _node("nestL", Sequent((X,), (Y,)), nr)
        return y, _node("unnestR", lton(c, y), nl)
    if rule in ("nodemergeD", "nodemergeU"):
        p = d.premises[0].conclusion
        for a, b in sorted(p.tree.arcs):
            if merge_conclusion(rule, p, a, b) == c:
                break
        x = b if rule == "nodemergeD" else a
        ih = translate_llbii_to_nlbii(d.premises[0], x)
        return x, _node("unnestL" if rule == "nodemergeD" else "unnestR", lton(c, x), ih)
    x = _focus(d)
    meta = d.meta
    if rule == "cut":
        meta = tuple((k, print_formula(parse_lformula(v)[1]) if k == "cut-formula" else v) for k, v in meta)
    subs = tuple(translate_llbii_to_nlbii(p, x) for p in d.premises)
    return x, Derivation(rule, lton(c, x), subs, meta)


def _remove(side, item) -> tuple:
    out = list(side)
    out.remove(item)
    return tuple(out)


# -- nested to labelled -----------------------------------------------------------------

class _Supply:
    def __init__(self, root, avoid=()):
        self.root = root
        self.used = set(avoid) | {root}
        self.n = 0

    def __call__(self):
        while True:
            self.n += 1
            name = f"{self.root}{self.n}"
            if name not in self.used:
                self.used.add(name)
                return name


def ntol(s: Sequent, root="x", avoid=()) -> LabelledSequent:
    """The labelled sequent whose root label ``root`` holds the top level of s.

    Fresh labels are ``root`` followed by 1, 2, ... in pre-order, skipping
    anything in ``avoid``.
    """
    return _ntol(s, root, _Supply(root, avoid))


def _ntol(s: Sequent, x, fresh) -> LabelledSequent:
    nodes, arcs, ante, succ = {x}, set(), [], []
    for side, out in (("ante", ante), ("succ", succ)):
        for m in getattr(s, side):
            if not isinstance(m, Sequent):
                out.append((x, m))
                continue
            y = fresh()
            sub = _ntol(m, y, fresh)
            nodes |= sub.tree.nodes
            arcs |= sub.tree.arcs
            arcs.add((y, x) if side == "ante" else (x, y))
            ante += sub.ante
            succ += sub.succ
    return LabelledSequent(LabelTree(nodes, arcs), tuple(ante), tuple(succ))


def translate_nlbii_to_llbii(d: Derivation, root="x") -> Derivation:
    """Labelled derivation ending in exactly ntol(end-sequent, root)."""
    return _to_labelled(d, root, ntol(d.conclusion, root))


def translate_lbii_to_llbii(d: Derivation, root="x") -> Derivation:
    """Labelled derivation of root:Gamma |- root:Delta over a one-node tree."""
    return _to_labelled(embed_lbii_to_nlbii(d), root, from_standard(d.conclusion, root))


def translate_llbii_to_lbii(d: Derivation, root) -> Derivation:
    return translate_nlbii_to_lbii(translate_llbii_to_nlbii(d, root))


def _match_members(T: LabelledSequent, x, members, side: str) -> list:
    """Pair each nested member with a distinct neighbour of x whose subtree translates to it."""
    pool = T.tree.down(x) if side == "ante" else T.tree.up(x)
    views = {y: _lton_at(T, y, x) for y in pool}
    out = []
    for m in members:
        y = next(y for y in pool if views[y] == m and y not in [z for _, z in out])
        out.append((m, y))
    return out


def _side_nodes(T: LabelledSequent, x, ys) -> set:
    out = set()
    for y in ys:
        out |= T.tree.component(y, x)
    return out


def _with_top(T: LabelledSequent, x, s: Sequent) -> LabelledSequent:
    """T with the formulas at x replaced by the top-level formulas of s."""
    ante = [lf for lf in T.ante if lf[0] != x] + [(x, a) for a in s.formulas("ante")]
    succ = [lf for lf in T.succ if lf[0] != x] + [(x, a) for a in s.formulas("succ")]
    return L(T.tree, ante, succ)


def _lweaken(c: LabelledSequent, target: LabelledSequent, top: Derivation) -> Derivation:
    steps, cur = [], c
    for lf in _lf_diff(c.ante, target.ante):
        steps.append(("weakL", cur))
        cur = L(cur.tree, _remove(cur.ante, lf), cur.succ)
    for lf in _lf_diff(c.succ, target.succ):
        steps.append(("weakR", cur))
        cur = L(cur.tree, cur.ante, _remove(cur.succ, lf))
    if cur != L(c.tree, target.ante, target.succ):
        raise ValueError("weakening target is not a sub-sequent")
    for rule, concl in reversed(steps):
        top = _node(rule, concl, top)
    return top


def _prune(c: LabelledSequent, keep: set):
    """nodesplit chain removing every formula-free node outside keep, leaves first.

    Returns (derivation builder, pruned sequent).
    """
    steps, cur = [], c
    while True:
        leaves = sorted(n for n in cur.tree.nodes - keep if len(cur.tree.neighbours(n)) == 1)
        if not leaves:
            break
        z = leaves[0]
        (w, direction), = cur.tree.neighbours(z)
        rule = "nodesplitU" if direction == "d" else "nodesplitD"
        steps.append((rule, cur))
        cur = L(cur.tree.restrict(cur.tree.nodes - {z}), cur.ante, cur.succ)

    def build(top):
        for rule, concl in reversed(steps):
            top = _node(rule, concl, top)
        return top

    return build, cur


def _move_to(c: LabelledSequent, x, y, side_monot: str):
    """monot chain copying x's formulas on one side to y, then weakening them at x."""
    steps, cur = [], c
    forms = [a for lx, a in getattr(c, side_monot) if lx == x]
    for a in forms:
        steps.append(("monotL" if side_monot == "ante" else "monotR", cur))
        cur = L(cur.tree, cur.ante + (((y, a),) if side_monot == "ante" else ()),
                cur.succ + (((y, a),) if side_monot == "succ" else ()))
    for a in forms:
        steps.append(("weakL" if side_monot == "ante" else "weakR", cur))
        if side_monot == "ante":
            cur = L(cur.tree, _remove(cur.ante, (x, a)), cur.succ)
        else:
            cur = L(cur.tree, cur.ante, _remove(cur.succ, (x, a)))
    return steps, cur


def _chain(steps, top: Derivation) -> Derivation:
    for rule, concl in reversed(steps):
        top = _node(rule, concl, top)
    return top


def _to_labelled(d: Derivation, x, T: LabelledSequent) -> Derivation:
    """Labelled derivation ending in T, where lton(T, x) is the end-sequent of d."""
    c = d.conclusion
    rule = d.rule
    if rule in ("implR", "nestR", "exclL", "nestL"):
        p = d.premises[0].conclusion
        up = rule in ("implR", "nestR")
        if rule in ("implR", "exclL"):
            side = c.succ if up else c.ante
            f = next(f for f in dict.fromkeys(side) if not isinstance(f, Sequent)
                     and isinstance(f, Impl if up else Excl)
                     and p == (Sequent(c.ante + (f.left,), (f.right,)) if up else Sequent((f.left,), c.succ + (f.right,))))
            principal = (x, f)
            kept_nbrs = []
        else:
            n = _nest_member(rule, c, p)
            (_, y0), = _match_members(T, x, [n], "succ" if up else "ante")
            principal = None
            kept_nbrs = [y0]
        # 1. weaken away the other side (formulas in the opposite subtrees and at x)
        other = T.tree.up(x) if up else T.tree.down(x)
        drop_nodes = _side_nodes(T, x, [y for y in other if y not in kept_nbrs])

        def kept(side, is_succ):
            return [
                lf for lf in side
                if lf[0] not in drop_nodes and not (lf[0] == x and is_succ == up and lf != principal)
            ]

        T1 = L(T.tree, kept(T.ante, False), kept(T.succ, True))
        # 2. prune the emptied subtrees
        keep_nodes = set(T.tree.nodes) - drop_nodes
        build_prune, T2 = _prune(T1, keep_nodes)
        # 3. the logical rule, or the existing neighbour for nest rules
        if principal is not None:
            y = fresh_label(T2.tree.nodes)
            a, b = (y, principal[1].left), (y, principal[1].right)
            if up:
                tree = T2.tree.join(LabelTree.arc(x, y), x)
                T3 = L(tree, T2.ante + (a,), _remove(T2.succ, principal) + (b,))
            else:
                tree = T2.tree.join(LabelTree.arc(y, x), x)
                T3 = L(tree, _remove(T2.ante, principal) + (a,), T2.succ + (b,))
        else:
            y = kept_nbrs[0]
            T3 = T2
        # 4. copy x's formulas to y and drop them at x
        mono, T5 = _move_to(T3, x, y, "ante" if up else "succ")
        # 5. remove x itself
        split_rule = "nodesplitD" if up else "nodesplitU"
        T6 = L(merge_node(T5.tree, x, y), T5.ante, T5.succ)
        ih = _to_labelled(d.premises[0], y, T6)
        d5 = _node(split_rule, T5, ih)
        d3 = _chain(mono, d5)
        if principal is not None:
            d3 = _node(rule, T2, d3)
        return _lweaken(T, T1, build_prune(d3))
    if rule in ("unnestL", "unnestR"):
        p = d.premises[0].conclusion
        n = _unnest_member(rule, c, p)
        below = rule == "unnestL"
        y = fresh_label(T.tree.nodes)
        # formulas of n at x move to y, and so do the neighbours standing for n's members
        ante, succ = list(T.ante), list(T.succ)
        for a in n.formulas("ante"):
            ante.remove((x, a))
            ante.append((y, a))
        for a in n.formulas("succ"):
            succ.remove((x, a))
            succ.append((y, a))
        moved = dict(_match_members(T, x, n.nested("ante"), "ante") + _match_members(T, x, n.nested("succ"), "succ"))
        moved_nodes = set(moved.values())
        arcs = set()
        for a, b in T.tree.arcs:
            if a == x and b in moved_nodes:
                a = y
            elif b == x and a in moved_nodes:
                b = y
            arcs.add((a, b))
        arcs.add((y, x) if below else (x, y))
        P = L(LabelTree(T.tree.nodes | {y}, arcs), ante, succ)
        ih = _to_labelled(d.premises[0], x, P)
        return _node("nodemergeD" if below else "nodemergeU", T, ih)
    # formula rules: the premises differ from c only in top-level formulas
    meta = d.meta
    if rule == "cut":
        meta = tuple((k, print_lformula((x, parse_formula(v))) if k == "cut-formula" else v) for k, v in meta)
    subs = tuple(_to_labelled(q, x, _with_top(T, x, q.conclusion)) for q in d.premises)
    return Derivation(rule, T, subs, meta)

