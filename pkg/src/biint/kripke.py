"""Kripke trees, the truth relation, and exhaustive countermodel search.

Countermodel search only ever answers "here is a countermodel" or "none up
to N worlds"; it is not a decision procedure for validity.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Mapping

from .syntax import And, Atom, Bot, Excl, Formula, Impl, Or, Sequent, Top, atoms


def _undirected_tree(nodes, arcs) -> bool:
    nodes = set(nodes)
    if not nodes:
        return False
    pairs = set()
    for x, y in arcs:
        if x == y or x not in nodes or y not in nodes:
            return False
        key = frozenset((x, y))
        if key in pairs:
            return False
        pairs.add(key)
    if len(pairs) != len(nodes) - 1:
        return False
    adj = {n: set() for n in nodes}
    for x, y in arcs:
        adj[x].add(y)
        adj[y].add(x)
    start = next(iter(nodes))
    seen, todo = {start}, [start]
    while todo:
        n = todo.pop()
        for m in adj[n] - seen:
            seen.add(m)
            todo.append(m)
    return seen == nodes


def reflexive_transitive_closure(nodes, arcs) -> frozenset:
    succ = {n: set() for n in nodes}
    for x, y in arcs:
        succ[x].add(y)
    out = set()
    for n in nodes:
        seen, todo = {n}, [n]
        while todo:
            m = todo.pop()
            for k in succ[m] - seen:
                seen.add(k)
                todo.append(k)
        out.update((n, m) for m in seen)
    return frozenset(out)


@dataclass(frozen=True)
class KripkeTree:
    worlds: tuple
    arcs: frozenset
    interp: Mapping

    def __post_init__(self):
        object.__setattr__(self, "worlds", tuple(self.worlds))
        object.__setattr__(self, "arcs", frozenset(self.arcs))
        interp = {w: frozenset(self.interp.get(w, ())) for w in self.worlds}
        object.__setattr__(self, "interp", interp)
        if not _undirected_tree(self.worlds, self.arcs):
            raise ValueError("adjacency is not an undirected tree")
        for x, y in self.order:
            if not interp[x] <= interp[y]:
                raise ValueError(f"interpretation not monotone along {x} <= {y}")

    @property
    def order(self) -> frozenset:
        cached = self.__dict__.get("_order")
        if cached is None:
            cached = reflexive_transitive_closure(self.worlds, self.arcs)
            self.__dict__["_order"] = cached
        return cached

    def above(self, w) -> list:
        return [v for v in self.worlds if (w, v) in self.order]

    def below(self, w) -> list:
        return [v for v in self.worlds if (v, w) in self.order]

    def __hash__(self):
        return hash((self.worlds, self.arcs, tuple(sorted((w, tuple(sorted(a))) for w, a in self.interp.items()))))

    def describe(self, at=None) -> str:
        lines = ["worlds: " + " ".join(self.worlds)]
        lines.append("arcs:" + "".join(f" {x}>{y}" for x, y in sorted(self.arcs)))
        for w in self.worlds:
            lines.append(f"{w}:" + "".join(f" {p}" for p in sorted(self.interp[w])))
        if at is not None:
            lines.append(f"at: {at}")
        return "\n".join(lines)


def accessibility(k: KripkeTree) -> frozenset:
    return k.order


def eval_formula(k: KripkeTree, w, f: Formula) -> bool:
    if w not in k.interp:
        raise KeyError(f"unknown world {w!r}")
    return _eval(k, w, f)


def _eval(k: KripkeTree, w, f: Formula) -> bool:
    if isinstance(f, Atom):
        return f.name in k.interp[w]
    if isinstance(f, Top):
        return True
    if isinstance(f, Bot):
        return False
    if isinstance(f, And):
        return _eval(k, w, f.left) and _eval(k, w, f.right)
    if isinstance(f, Or):
        return _eval(k, w, f.left) or _eval(k, w, f.right)
    if isinstance(f, Impl):
        return all(not _eval(k, v, f.left) or _eval(k, v, f.right) for v in k.above(w))
    if isinstance(f, Excl):
        return any(_eval(k, v, f.left) and not _eval(k, v, f.right) for v in k.below(w))
    raise TypeError(f"not a formula: {f!r}")


def sequent_valid_in(k: KripkeTree, w, s: Sequent) -> bool:
    """True unless every antecedent formula holds at w and no succedent formula does.

    Nested sequents are evaluated through their flattening.
    """
    if not s.is_flat:
        from .translate import flatten_sequent

        s = flatten_sequent(s)
    if not all(eval_formula(k, w, a) for a in s.ante):
        return True
    return any(eval_formula(k, w, b) for b in s.succ)


def labelled_sequent_valid_in(k: KripkeTree, v: Mapping, ls) -> bool:
    for x, y in ls.tree.arcs:
        if (v[x], v[y]) not in k.order:
            raise ValueError(f"assignment does not respect arc {x}>{y}")
    if not all(eval_formula(k, v[x], a) for x, a in ls.ante):
        return True
    return any(eval_formula(k, v[x], a) for x, a in ls.succ)


# -- enumeration --------------------------------------------------------------

def _rooted_code(adj: dict, node, parent) -> tuple:
    kids = []
    for m, direction in adj[node]:
        if m != parent:
            kids.append((direction, _rooted_code(adj, m, node)))
    return tuple(sorted(kids))


def _adjacency(nodes, arcs) -> dict:
    adj = {n: [] for n in nodes}
    for x, y in arcs:
        adj[x].append((y, "u"))  # y is above x
        adj[y].append((x, "d"))
    return adj


@lru_cache(maxsize=None)
def tree_shapes(n: int) -> tuple:
    """All directed trees on n worlds up to isomorphism, as (worlds, arcs).

    Worlds are named w0..w{n-1} in breadth-first order from a canonical root,
    so the output is deterministic.
    """
    if n < 1:
        return ()
    seen = {}
    for parents in itertools.product(*(range(i) for i in range(1, n))):
        for orient in itertools.product((0, 1), repeat=n - 1):
            arcs = []
            for i, (p, o) in enumerate(zip(parents, orient), start=1):
                arcs.append((p, i) if o == 0 else (i, p))
            adj = _adjacency(range(n), arcs)
            codes = {r: _rooted_code(adj, r, None) for r in range(n)}
            root = min(range(n), key=lambda r: codes[r])
            canon = codes[root]
            if canon in seen:
                continue
            # rename breadth-first from the canonical root, children by code
            names = {root: "w0"}
            order = [root]
            for node in order:
                kids = [(d, _rooted_code(adj, m, node), m) for m, d in adj[node] if m not in names]
                for _, _, m in sorted(kids, key=lambda t: (t[0], t[1])):
                    names[m] = f"w{len(names)}"
                    order.append(m)
            seen[canon] = (
                tuple(f"w{i}" for i in range(n)),
                frozenset((names[x], names[y]) for x, y in arcs),
            )
    return tuple(seen[c] for c in sorted(seen))


def up_sets(worlds, order) -> list[frozenset]:
    """All subsets closed upward under the order, smallest first."""
    out = []
    for r in range(len(worlds) + 1):
        for combo in itertools.combinations(worlds, r):
            s = set(combo)
            if all(v in s for (u, v) in order if u in s):
                out.append(frozenset(s))
    return out


def kripke_trees(max_worlds: int, atom_names) -> Iterator[KripkeTree]:
    """Every Kripke tree with at most max_worlds worlds over the given atoms.

    Monotone interpretations are built directly from up-sets per atom, so no
    non-monotone candidate is ever constructed.
    """
    atom_names = sorted(atom_names)
    for n in range(1, max_worlds + 1):
        for worlds, arcs in tree_shapes(n):
            order = reflexive_transitive_closure(worlds, arcs)
            ups = up_sets(worlds, order)
            for choice in itertools.product(ups, repeat=len(atom_names)):
                interp = {w: {p for p, u in zip(atom_names, choice) if w in u} for w in worlds}
                yield KripkeTree(worlds, arcs, interp)


def find_countermodel(s: Sequent, max_worlds: int = 4):
    """First (tree, world) falsifying s, or None if there is none up to max_worlds."""
    if max_worlds < 1:
        raise ValueError("max_worlds must be at least 1")
    if not s.is_flat:
        from .translate import flatten_sequent

        s = flatten_sequent(s)
    for k in kripke_trees(max_worlds, s.atoms()):
        for w in k.worlds:
            if not sequent_valid_in(k, w, s):
                return k, w
    return None


def arc_respecting_assignments(k: KripkeTree, tree) -> Iterator[dict]:
    nodes = sorted(tree.nodes)
    for image in itertools.product(k.worlds, repeat=len(nodes)):
        v = dict(zip(nodes, image))
        if all((v[x], v[y]) in k.order for x, y in tree.arcs):
            yield v


def find_labelled_countermodel(ls, max_worlds: int = 3):
    """First (tree, assignment) falsifying a labelled sequent, or None."""
    names = set()
    for _, a in ls.ante + ls.succ:
        names |= atoms(a)
    for k in kripke_trees(max_worlds, names):
        for v in arc_respecting_assignments(k, ls.tree):
            if not labelled_sequent_valid_in(k, v, ls):
                return k, v
    return None
