"""Label trees, labelled sequents and the labelled calculus L-LBiI.

Text syntax::

    [x>y, y>z] x:p, y:(q -> r) |- z:r
    [x] |- x:T

The bracket lists the arcs of the label tree (``x>y`` means y is
immediately above x); a single-node tree is written ``[x]``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .derivation import CheckError, CutPolicy, Derivation
from .kripke import _undirected_tree
from .syntax import (
    BOT,
    TOP,
    And,
    Excl,
    Impl,
    Or,
    ParseError,
    Tokens,
    _parse_impl,
    formula_key,
    print_formula,
)

LFormula = tuple  # (label, Formula)


def lf_key(lf: LFormula) -> tuple:
    return (lf[0], formula_key(lf[1]))


def lsort(items: Iterable[LFormula]) -> tuple:
    return tuple(sorted(items, key=lf_key))


def print_lformula(lf: LFormula) -> str:
    x, a = lf
    text = print_formula(a)
    if not isinstance(a, (And, Or, Impl, Excl)):
        return f"{x}:{text}"
    return f"{x}:({text})"


# -- label trees -------------------------------------------------------------------

@dataclass(frozen=True)
class LabelTree:
    nodes: frozenset
    arcs: frozenset

    def __post_init__(self):
        object.__setattr__(self, "nodes", frozenset(self.nodes))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        if not _undirected_tree(self.nodes, self.arcs):
            raise ValueError("label graph is not an undirected tree")

    @classmethod
    def sglt(cls, x) -> "LabelTree":
        return cls({x}, ())

    @classmethod
    def arc(cls, x, y) -> "LabelTree":
        return cls({x, y}, {(x, y)})

    def join(self, other: "LabelTree", x) -> "LabelTree":
        """The join at x; the two trees may share only x."""
        if self.nodes & other.nodes != {x}:
            raise ValueError(f"join at {x} is not welldefined")
        return LabelTree(self.nodes | other.nodes, self.arcs | other.arcs)

    def up(self, x) -> list:
        return sorted(b for a, b in self.arcs if a == x)

    def down(self, x) -> list:
        return sorted(a for a, b in self.arcs if b == x)

    def neighbours(self, x) -> list:
        return sorted([(y, "u") for y in self.up(x)] + [(y, "d") for y in self.down(x)])

    def component(self, start, without) -> frozenset:
        """Nodes reachable from start when the edge {start, without} is removed."""
        seen, todo = {start}, [start]
        while todo:
            n = todo.pop()
            for m, _ in self.neighbours(n):
                if m in seen or (n == start and m == without):
                    continue
                seen.add(m)
                todo.append(m)
        return frozenset(seen)

    def restrict(self, nodes) -> "LabelTree":
        nodes = frozenset(nodes)
        return LabelTree(nodes, {(a, b) for a, b in self.arcs if a in nodes and b in nodes})

    def path(self, x, z) -> list:
        """Labels on the unique path from x to z, both ends included."""
        prev = {x: None}
        todo = [x]
        while todo:
            n = todo.pop()
            for m, _ in self.neighbours(n):
                if m not in prev:
                    prev[m] = n
                    todo.append(m)
        if z not in prev:
            raise ValueError(f"unknown label {z!r}")
        out = [z]
        while out[-1] != x:
            out.append(prev[out[-1]])
        return out[::-1]

    def __str__(self) -> str:
        if not self.arcs:
            return "[" + ", ".join(sorted(self.nodes)) + "]"
        return "[" + ", ".join(f"{a}>{b}" for a, b in sorted(self.arcs)) + "]"


@dataclass(frozen=True)
class LabelledSequent:
    tree: LabelTree
    ante: tuple = ()
    succ: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "ante", lsort(self.ante))
        object.__setattr__(self, "succ", lsort(self.succ))
        for x, _ in self.ante + self.succ:
            if x not in self.tree.nodes:
                raise ValueError(f"label {x!r} is not a node of the label tree")

    def __str__(self) -> str:
        return print_labelled_sequent(self)

    def at(self, side: str, x) -> tuple:
        return tuple(a for y, a in getattr(self, side) if y == x)

    def labels(self) -> frozenset:
        return self.tree.nodes


def print_labelled_sequent(ls: LabelledSequent) -> str:
    left = ", ".join(map(print_lformula, ls.ante))
    right = ", ".join(map(print_lformula, ls.succ))
    body = (f"{left} |- " if left else "|- ") + right
    return f"{ls.tree} {body.rstrip()}"


def _parse_label(ts: Tokens) -> str:
    pos = ts.pos()
    tok = ts.next()
    if not (tok[0].isalpha() or tok[0] == "_") or not tok.replace("_", "a").isalnum():
        raise ParseError(f"expected a label, got {tok!r}", ts.text, pos)
    return tok


def _parse_lformulas(ts: Tokens, stop) -> list:
    out = []
    if ts.peek() in stop:
        return out
    while True:
        x = _parse_label(ts)
        ts.expect(":")
        out.append((x, _parse_impl(ts)))
        if ts.peek() != ",":
            return out
        ts.next()


def parse_labelled_sequent(text: str) -> LabelledSequent:
    ts = Tokens(text)
    ts.expect("[")
    nodes, arcs = set(), set()
    while True:
        x = _parse_label(ts)
        nodes.add(x)
        if ts.peek() == ">":
            ts.next()
            y = _parse_label(ts)
            nodes.add(y)
            arcs.add((x, y))
        if ts.peek() != ",":
            break
        ts.next()
    ts.expect("]")
    try:
        tree = LabelTree(nodes, arcs)
    except ValueError as e:
        raise ParseError(str(e), text, 0) from e
    ante = _parse_lformulas(ts, {"|-"})
    ts.expect("|-")
    succ = _parse_lformulas(ts, {None})
    ts.done()
    try:
        return LabelledSequent(tree, tuple(ante), tuple(succ))
    except ValueError as e:
        raise ParseError(str(e), text, 0) from e


def parse_lformula(text: str) -> LFormula:
    ts = Tokens(text)
    x = _parse_label(ts)
    ts.expect(":")
    f = _parse_impl(ts)
    ts.done()
    return (x, f)


def from_standard(s, x="x") -> LabelledSequent:
    """x:Gamma |- x:Delta over the single-node tree."""
    return LabelledSequent(LabelTree.sglt(x), tuple((x, a) for a in s.ante), tuple((x, a) for a in s.succ))


# -- renaming -----------------------------------------------------------------------

def _rename_map(renaming, labels) -> dict:
    m = {x: renaming.get(x, x) for x in labels}
    if len(set(m.values())) != len(m):
        raise ValueError("renaming is not injective on the labels present")
    return m


def _rename_ls(ls: LabelledSequent, m: dict) -> LabelledSequent:
    tree = LabelTree({m[x] for x in ls.tree.nodes}, {(m[a], m[b]) for a, b in ls.tree.arcs})
    return LabelledSequent(tree, tuple((m[x], a) for x, a in ls.ante), tuple((m[x], a) for x, a in ls.succ))


def derivation_labels(d: Derivation) -> set:
    out = set()
    for _, n in d.nodes():
        out |= n.conclusion.tree.nodes
    return out


def rename_labels(obj, renaming: dict):
    """Apply an injective label renaming to a tree, sequent or derivation.

    Labels missing from ``renaming`` are kept.
    """
    if isinstance(obj, LabelTree):
        m = _rename_map(renaming, obj.nodes)
        return LabelTree({m[x] for x in obj.nodes}, {(m[a], m[b]) for a, b in obj.arcs})
    if isinstance(obj, LabelledSequent):
        return _rename_ls(obj, _rename_map(renaming, obj.tree.nodes))
    if isinstance(obj, Derivation):
        m = _rename_map(renaming, derivation_labels(obj))
        return _rename_derivation(obj, m)
    raise TypeError(f"cannot rename labels in {type(obj).__name__}")


def _rename_derivation(d: Derivation, m: dict) -> Derivation:
    meta = []
    for k, v in d.meta:
        if k == "cut-formula":
            x, a = parse_lformula(v)
            v = print_lformula((m[x], a))
        meta.append((k, v))
    return Derivation(d.rule, _rename_ls(d.conclusion, m), tuple(_rename_derivation(p, m) for p in d.premises), tuple(meta))


def fresh_label(used, prefix: str = "x") -> str:
    i = 0
    while f"{prefix}{i}" in used:
        i += 1
    return f"{prefix}{i}"


def extend_renaming(renaming: dict, labels) -> dict:
    """Extend renaming injectively to labels, renaming only on collisions."""
    m = dict(renaming)
    image = set(m.values())
    used = set(labels) | image
    for x in sorted(labels):
        if x in m:
            continue
        if x in image:
            y = fresh_label(used)
            used.add(y)
        else:
            y = x
        m[x] = y
        image.add(y)
    return m


def align(d: Derivation, renaming: dict) -> Derivation:
    return rename_labels(d, extend_renaming(renaming, derivation_labels(d)))


# -- isomorphism ----------------------------------------------------------------------

def _code(ls: LabelledSequent, x, parent, normal: bool) -> tuple:
    ante, succ = ls.at("ante", x), ls.at("succ", x)
    if normal:
        ante, succ = set(ante), set(succ)
    kids = tuple(sorted((d, _code(ls, y, x, normal)) for y, d in ls.tree.neighbours(x) if y != parent))
    return (tuple(sorted(map(formula_key, ante))), tuple(sorted(map(formula_key, succ))), kids)


def rooted_code(ls: LabelledSequent, root, normal: bool = False) -> tuple:
    return _code(ls, root, None, normal)


def canonical_code(ls: LabelledSequent, normal: bool = False) -> tuple:
    """Isomorphism invariant; with normal=True multiplicities are ignored."""
    return min(rooted_code(ls, r, normal) for r in ls.tree.nodes)


def isomorphism(a: LabelledSequent, b: LabelledSequent, root_a=None, root_b=None) -> dict | None:
    """A label map sending a onto b (optionally root_a to root_b), or None."""
    roots_a = [root_a] if root_a is not None else [min(a.tree.nodes)]
    roots_b = [root_b] if root_b is not None else sorted(b.tree.nodes)
    for ra in roots_a:
        ca = rooted_code(a, ra)
        for rb in roots_b:
            if rooted_code(b, rb) == ca:
                m = {}
                _match(a, ra, None, b, rb, None, m)
                return m
    return None


def _match(a, x, px, b, y, py, m) -> None:
    m[x] = y
    ka = sorted(((d, _code(a, n, x, False)), n) for n, d in a.tree.neighbours(x) if n != px)
    kb = sorted(((d, _code(b, n, y, False)), n) for n, d in b.tree.neighbours(y) if n != py)
    for (_, n), (_, k) in zip(ka, kb):
        _match(a, n, x, b, k, y, m)


# -- rule checking -------------------------------------------------------------------

RULES = (
    "hyp", "cut", "weakL", "weakR", "contrL", "contrR", "nodesplitU", "nodesplitD",
    "nodemergeD", "nodemergeU", "monotL", "monotR", "topL", "topR", "botL", "botR",
    "andL", "andR", "orL", "orR", "implL", "implR", "exclL", "exclR",
)
_ARITY = {"hyp": 0, "topR": 0, "botL": 0, "cut": 2, "andR": 2, "orL": 2, "implL": 2, "exclR": 2}


def _remove(side: tuple, lf) -> tuple:
    out = list(side)
    out.remove(lf)
    return tuple(out)


def L(tree, ante, succ) -> LabelledSequent:
    return LabelledSequent(tree, tuple(ante), tuple(succ))


def _distinct(side) -> list:
    return list(dict.fromkeys(side))


def merge_node(tree: LabelTree, gone, into) -> LabelTree:
    """Identify adjacent nodes: gone disappears into into."""
    arcs = set()
    for a, b in tree.arcs:
        if {a, b} == {gone, into}:
            continue
        arcs.add((into if a == gone else a, into if b == gone else b))
    return LabelTree(tree.nodes - {gone}, arcs)


def _subst(side, gone, into) -> tuple:
    return tuple((into if x == gone else x, a) for x, a in side)


def split_premise(c: LabelledSequent, x, y) -> LabelledSequent:
    """Premise of nodesplit U/D removing the formula-free node x next to y."""
    return L(merge_node(c.tree, x, y), c.ante, c.succ)


def nodesplit_ok(rule: str, c: LabelledSequent, x, y) -> str | None:
    arc = (x, y) if rule == "nodesplitD" else (y, x)
    if arc not in c.tree.arcs:
        return f"{rule}: no arc {arc[0]}>{arc[1]}"
    if any(z == x for z, _ in c.ante + c.succ):
        return f"{rule}: split node {x} carries formulas"
    others = c.tree.up(x) if rule == "nodesplitD" else c.tree.down(x)
    if [z for z in others if z != y]:
        return f"proviso violated: {x} has another arc {'out of' if rule == 'nodesplitD' else 'into'} it"
    return None


def merge_conclusion(rule: str, p: LabelledSequent, a, b) -> LabelledSequent:
    """Conclusion of nodemerge over the premise arc a>b."""
    gone, into = (a, b) if rule == "nodemergeD" else (b, a)
    return L(merge_node(p.tree, gone, into), _subst(p.ante, gone, into), _subst(p.succ, gone, into))


def candidates(rule: str, c: LabelledSequent, meta) -> list[tuple] | str:
    """Candidate premise lists of a non-structural-graph rule with conclusion c."""
    G, D, T = c.ante, c.succ, c.tree
    out = []
    if rule == "hyp":
        return [()] if set(G) & set(D) else "hyp needs the same labelled formula on both sides"
    if rule == "topR":
        return [()] if any(a == TOP for _, a in D) else "no x:T in succedent"
    if rule == "botL":
        return [()] if any(a == BOT for _, a in G) else "no x:F in antecedent"
    if rule == "cut":
        text = dict(meta).get("cut-formula")
        if text is None:
            return "cut node needs a :cut-formula annotation"
        lf = parse_lformula(text)
        if lf[0] not in T.nodes:
            return f"cut label {lf[0]} is not in the tree"
        return [(L(T, G, D + (lf,)), L(T, G + (lf,), D))]
    if rule in ("weakL", "contrL"):
        for lf in _distinct(G):
            out.append((L(T, _remove(G, lf), D),) if rule == "weakL" else (L(T, G + (lf,), D),))
        return out or f"{rule}: empty antecedent"
    if rule in ("weakR", "contrR"):
        for lf in _distinct(D):
            out.append((L(T, G, _remove(D, lf)),) if rule == "weakR" else (L(T, G, D + (lf,)),))
        return out or f"{rule}: empty succedent"
    if rule == "monotL":
        for x, a in _distinct(G):
            for y in T.up(x):
                out.append((L(T, G + ((y, a),), D),))
        return out or "monotL: no x:A with an arc x>y"
    if rule == "monotR":
        for x, a in _distinct(D):
            for y in T.down(x):
                out.append((L(T, G, D + ((y, a),)),))
        return out or "monotR: no x:A with an arc y>x"
    if rule == "topL":
        return [(L(T, _remove(G, lf), D),) for lf in _distinct(G) if lf[1] == TOP] or "no x:T in antecedent"
    if rule == "botR":
        return [(L(T, G, _remove(D, lf)),) for lf in _distinct(D) if lf[1] == BOT] or "no x:F in succedent"
    table = {
        "andL": ("ante", And), "andR": ("succ", And), "orL": ("ante", Or), "orR": ("succ", Or),
        "implL": ("ante", Impl), "exclR": ("succ", Excl),
    }
    if rule not in table:
        return f"unknown rule {rule!r}"
    side, cls = table[rule]
    for lf in _distinct(G if side == "ante" else D):
        x, f = lf
        if not isinstance(f, cls):
            continue
        a, b = (x, f.left), (x, f.right)
        G1, D1 = (_remove(G, lf), D) if side == "ante" else (G, _remove(D, lf))
        if rule == "andL":
            out.append((L(T, G1 + (a, b), D1),))
        elif rule == "andR":
            out.append((L(T, G1, D1 + (a,)), L(T, G1, D1 + (b,))))
        elif rule == "orL":
            out.append((L(T, G1 + (a,), D1), L(T, G1 + (b,), D1)))
        elif rule == "orR":
            out.append((L(T, G1, D1 + (a, b)),))
        elif rule == "implL":
            out.append((L(T, G, D1 + (a,)), L(T, G1 + (b,), D1)))
        elif rule == "exclR":
            out.append((L(T, G1, D1 + (a,)), L(T, G1 + (b,), D)))
    return out or f"{rule}: no principal formula of the required shape"


def _check_new_label(rule: str, c: LabelledSequent, p: LabelledSequent) -> str | None:
    new = p.tree.nodes - c.tree.nodes
    if p.tree.nodes == c.tree.nodes or len(new) != 1 or not c.tree.nodes <= p.tree.nodes:
        return f"freshness violation: {rule} must introduce exactly one fresh label"
    (y,) = new
    for lf in _distinct(c.ante if rule == "exclL" else c.succ):
        x, f = lf
        if not isinstance(f, Impl if rule == "implR" else Excl):
            continue
        arc = (x, y) if rule == "implR" else (y, x)
        if p.tree.arcs != c.tree.arcs | {arc}:
            continue
        if rule == "implR":
            want = L(p.tree, c.ante + ((y, f.left),), _remove(c.succ, lf) + ((y, f.right),))
        else:
            want = L(p.tree, _remove(c.ante, lf) + ((y, f.left),), c.succ + ((y, f.right),))
        if want == p:
            return None
    return "premises do not match the rule schema (context mismatch)"


def check_node(node: Derivation, cuts: CutPolicy) -> str | None:
    rule, c = node.rule, node.conclusion
    prem = [p.conclusion for p in node.premises]
    if not all(isinstance(s, LabelledSequent) for s in [c] + prem):
        return "not a labelled sequent"
    if rule not in RULES:
        return f"unknown rule {rule!r}"
    want = _ARITY.get(rule, 1)
    if len(prem) != want:
        return f"wrong premise count: {rule} has {want}, got {len(prem)}"
    if rule == "cut" and cuts is CutPolicy.NONE:
        return "forbidden cut"
    if rule in ("implR", "exclL"):
        return _check_new_label(rule, c, prem[0])
    if rule in ("nodesplitU", "nodesplitD"):
        p = prem[0]
        gone = c.tree.nodes - p.tree.nodes
        if len(gone) != 1:
            return f"{rule}: premise must have exactly one node less"
        (x,) = gone
        msgs = []
        for y, _ in c.tree.neighbours(x):
            msg = nodesplit_ok(rule, c, x, y)
            if msg is None and split_premise(c, x, y) == p:
                return None
            msgs.append(msg or "premises do not match the rule schema (context mismatch)")
        return msgs[0] if msgs else f"{rule}: node {x} is isolated"
    if rule in ("nodemergeD", "nodemergeU"):
        p = prem[0]
        for a, b in sorted(p.tree.arcs):
            if merge_conclusion(rule, p, a, b) == c:
                return None
        return f"{rule}: conclusion is not the premise with an arc merged"
    try:
        cands = candidates(rule, c, node.meta)
    except (ParseError, ValueError) as e:
        return f"bad annotation: {e}"
    if isinstance(cands, str):
        return cands
    if any(cand == tuple(prem) for cand in cands):
        return None
    if any(p.tree != c.tree for p in prem):
        return "label tree changed by a rule that keeps it"
    return "premises do not match the rule schema (context mismatch)"


def check_llbii(d: Derivation, cuts="full") -> None:
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


def is_llbii_derivation(d: Derivation, cuts="full") -> bool:
    try:
        check_llbii(d, cuts)
    except CheckError:
        return False
    return True


# -- cut-free search -----------------------------------------------------------------

def _node(rule, concl, *premises, **meta) -> Derivation:
    return Derivation(rule, concl, premises, tuple((k.replace("_", "-"), v) for k, v in meta.items()))


def saturate(ls: LabelledSequent, stop=None) -> tuple[LabelledSequent, list]:
    """Apply monotL/monotR to quiescence; returns the result and the steps taken.

    A step is (rule, conclusion).  Formulas already present are not copied
    again, nor are x:T to the left or x:F to the right.  Saturation ends
    early once ``stop`` holds of the current sequent.
    """
    steps = []
    cur = ls
    changed = stop is None or not stop(ls)
    while changed:
        changed = False
        ante, succ = set(cur.ante), set(cur.succ)
        for x, a in _distinct(cur.ante):
            if a == TOP:
                continue
            for y in cur.tree.up(x):
                if (y, a) not in ante:
                    steps.append(("monotL", cur))
                    cur = L(cur.tree, cur.ante + ((y, a),), cur.succ)
                    ante.add((y, a))
                    changed = True
                    if stop is not None and stop(cur):
                        return cur, steps
        for x, a in _distinct(cur.succ):
            if a == BOT:
                continue
            for y in cur.tree.down(x):
                if (y, a) not in succ:
                    steps.append(("monotR", cur))
                    cur = L(cur.tree, cur.ante, cur.succ + ((y, a),))
                    succ.add((y, a))
                    changed = True
                    if stop is not None and stop(cur):
                        return cur, steps
    return cur, steps


def _axiom(ls: LabelledSequent):
    if set(ls.ante) & set(ls.succ):
        return "hyp"
    if any(a == TOP for _, a in ls.succ):
        return "topR"
    if any(a == BOT for _, a in ls.ante):
        return "botL"
    return None


_EAGER = (("andL", "ante", And), ("orR", "succ", Or), ("andR", "succ", And), ("orL", "ante", Or))


def _premises_for(rule: str, ls: LabelledSequent, lf) -> tuple:
    G, D, T = ls.ante, ls.succ, ls.tree
    x, f = lf
    if rule == "topL":
        return (L(T, _remove(G, lf), D),)
    if rule == "botR":
        return (L(T, G, _remove(D, lf)),)
    a, b = (x, f.left), (x, f.right)
    if rule == "andL":
        return (L(T, _remove(G, lf) + (a, b), D),)
    if rule == "orR":
        return (L(T, G, _remove(D, lf) + (a, b)),)
    if rule == "andR":
        rest = _remove(D, lf)
        return (L(T, G, rest + (a,)), L(T, G, rest + (b,)))
    if rule == "orL":
        rest = _remove(G, lf)
        return (L(T, rest + (a,), D), L(T, rest + (b,), D))
    if rule == "implL":
        return (L(T, G, D + (a,)), L(T, _remove(G, lf) + (b,), D))
    if rule == "exclR":
        return (L(T, G, _remove(D, lf) + (a,)), L(T, G + (b,), D))
    y = fresh_label(T.nodes)
    if rule == "implR":
        tree = T.join(LabelTree.arc(x, y), x)
        return (L(tree, G + ((y, f.left),), _remove(D, lf) + ((y, f.right),)),)
    if rule == "exclL":
        tree = T.join(LabelTree.arc(y, x), x)
        return (L(tree, _remove(G, lf) + ((y, f.left),), D + ((y, f.right),)),)
    raise ValueError(rule)


def _eager(ls: LabelledSequent):
    for lf in _distinct(ls.ante):
        if lf[1] == TOP:
            yield "topL", lf
    for lf in _distinct(ls.succ):
        if lf[1] == BOT:
            yield "botR", lf
    for rule, side, cls in _EAGER:
        for lf in _distinct(getattr(ls, side)):
            if isinstance(lf[1], cls):
                yield rule, lf


def _branching(ls: LabelledSequent):
    ante, succ = set(ls.ante), set(ls.succ)
    for lf in _distinct(ls.ante):
        x, f = lf
        if isinstance(f, Impl) and (x, f.left) not in succ:
            yield "implL", lf
    for lf in _distinct(ls.succ):
        x, f = lf
        if isinstance(f, Excl) and (x, f.right) not in ante:
            yield "exclR", lf
    for lf in _distinct(ls.succ):
        if isinstance(lf[1], Impl):
            yield "implR", lf
    for lf in _distinct(ls.ante):
        if isinstance(lf[1], Excl):
            yield "exclL", lf


class _Search:
    def __init__(self):
        self.proved: dict = {}

    def prove(self, ls: LabelledSequent, budget: int, history: frozenset):
        sat, steps = saturate(ls, stop=_axiom)
        d = self._prove_saturated(sat, budget, history)
        if d is None:
            return None
        for rule, concl in reversed(steps):
            d = _node(rule, concl, d)
        return d

    def _prove_saturated(self, ls, budget, history):
        if budget <= 0:
            return None
        rule = _axiom(ls)
        if rule:
            return _node(rule, ls)
        key = canonical_code(ls, normal=True)
        if key in history:
            return None
        hit = self.proved.get((ls, budget))
        if hit is not None:
            return hit
        history = history | {key}
        # saturation may restore a principal formula that a rule just consumed,
        # so an invertible step is only taken if all its premises are new states
        d = None
        for step in _eager(ls):
            keys = [canonical_code(saturate(g)[0], normal=True) for g in _premises_for(step[0], ls, step[1])]
            if all(k not in history for k in keys):
                d = self._close(ls, step, budget, history)
                break
        else:
            for step in _branching(ls):
                d = self._close(ls, step, budget, history)
                if d is not None:
                    break
        if d is not None:
            self.proved[(ls, budget)] = d
        return d

    def _close(self, ls, step, budget, history):
        rule, lf = step
        subs = []
        for g in _premises_for(rule, ls, lf):
            d = self.prove(g, budget - 1, history)
            if d is None:
                return None
            subs.append(d)
        return Derivation(rule, ls, tuple(subs))


def search_llbii_cutfree(ls: LabelledSequent, depth: int) -> Derivation | None:
    """Iterative-deepening cut-free search; None means exhausted within depth.

    Monotonicity rules are applied to saturation before every other step and
    do not count towards the depth.  Branches whose saturated sequent is
    isomorphic (ignoring multiplicities) to an ancestor are abandoned.
    """
    if depth < 0:
        raise ValueError("depth must be non-negative")
    search = _Search()
    for bound in range(1, depth + 1):
        d = search.prove(ls, bound, frozenset())
        if d is not None:
            return d
    return None


def equal_up_to_renaming(a: LabelledSequent, b: LabelledSequent) -> bool:
    return canonical_code(a) == canonical_code(b)
