"""Random formulas, sequents and models for the property tests."""

import random

from hypothesis import strategies as st

from biint.kripke import KripkeTree
from biint.labelled import LabelledSequent, LabelTree
from biint.syntax import BOT, TOP, And, Atom, Excl, Impl, Or, Sequent

ATOMS = ("p", "q", "r", "s1", "long_name")
BINARY = (And, Or, Impl, Excl)


def formula(rng: random.Random, depth: int, atoms=ATOMS):
    if depth == 0 or rng.random() < 0.25:
        k = rng.randrange(len(atoms) + 2)
        if k == len(atoms):
            return TOP
        if k == len(atoms) + 1:
            return BOT
        return Atom(atoms[k])
    cls = rng.choice(BINARY)
    return cls(formula(rng, depth - 1, atoms), formula(rng, depth - 1, atoms))


def nested_sequent(rng: random.Random, depth: int = 3, atoms=("p", "q", "r")) -> Sequent:
    sides = []
    for _ in range(2):
        side = [formula(rng, 2, atoms) for _ in range(rng.randrange(3))]
        if depth > 0:
            side += [nested_sequent(rng, depth - 1, atoms) for _ in range(rng.randrange(2))]
        sides.append(tuple(side))
    return Sequent(*sides)


def label_tree(rng: random.Random, n: int, names=None) -> LabelTree:
    names = list(names or [f"n{i}" for i in range(n)])
    rng.shuffle(names)
    arcs = set()
    for i in range(1, n):
        a, b = names[rng.randrange(i)], names[i]
        arcs.add((a, b) if rng.random() < 0.5 else (b, a))
    return LabelTree(set(names), arcs)


def labelled_sequent(rng: random.Random, max_nodes: int = 4, atoms=("p", "q", "r")) -> LabelledSequent:
    tree = label_tree(rng, rng.randint(1, max_nodes))
    labels = sorted(tree.nodes)
    ante = tuple((rng.choice(labels), formula(rng, 2, atoms)) for _ in range(rng.randrange(4)))
    succ = tuple((rng.choice(labels), formula(rng, 2, atoms)) for _ in range(rng.randrange(4)))
    return LabelledSequent(tree, ante, succ)


def up_closure(worlds, arcs, seeds) -> set:
    out, todo = set(seeds), list(seeds)
    while todo:
        w = todo.pop()
        for a, b in arcs:
            if a == w and b not in out:
                out.add(b)
                todo.append(b)
    return out


def kripke_tree(rng: random.Random, max_worlds: int = 4, atoms=("p", "q", "r")) -> KripkeTree:
    n = rng.randint(1, max_worlds)
    worlds = [f"w{i}" for i in range(n)]
    tree = label_tree(rng, n, worlds)
    interp = {w: set() for w in worlds}
    for p in atoms:
        seeds = [w for w in worlds if rng.random() < 0.3]
        for w in up_closure(worlds, tree.arcs, seeds):
            interp[w].add(p)
    return KripkeTree(tuple(worlds), tree.arcs, interp)


def formulas(max_leaves: int = 30):
    leaves = st.one_of(st.sampled_from(ATOMS).map(Atom), st.just(TOP), st.just(BOT))
    return st.recursive(
        leaves,
        lambda sub: st.tuples(st.sampled_from(BINARY), sub, sub).map(lambda t: t[0](t[1], t[2])),
        max_leaves=max_leaves,
    )
