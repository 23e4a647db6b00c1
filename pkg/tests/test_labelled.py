import random

import pytest

from biint.derivation import CheckError, Derivation, format_derivation, parse_derivation
from biint.kripke import find_labelled_countermodel
from biint.labelled import (
    LabelledSequent,
    LabelTree,
    check_llbii,
    equal_up_to_renaming,
    fresh_label,
    isomorphism,
    merge_conclusion,
    nodesplit_ok,
    parse_labelled_sequent,
    print_labelled_sequent,
    rename_labels,
    search_llbii_cutfree,
    split_premise,
)
from biint.lbii import node

from generators import labelled_sequent

ls_ = parse_labelled_sequent
GOAL_END = "[x] x:p |- x:q, x:(r -> (p -< q) & r)"


def test_label_tree_constructions():
    t = LabelTree.arc("x", "y").join(LabelTree.arc("z", "x"), "x")
    assert t.arcs == {("x", "y"), ("z", "x")}
    assert t.up("x") == ["y"] and t.down("x") == ["z"]
    assert t.path("y", "z") == ["y", "x", "z"]
    with pytest.raises(ValueError):
        LabelTree.arc("x", "y").join(LabelTree.arc("x", "y"), "x")
    with pytest.raises(ValueError):
        LabelTree({"x", "y", "z"}, {("x", "y")})
    with pytest.raises(ValueError):
        LabelTree({"x", "y"}, {("x", "y"), ("y", "x")})


def test_parse_and_print():
    s = ls_("[x>y, z>x] x:p, y:(q -> r) |- z:r")
    assert s.tree.arcs == {("x", "y"), ("z", "x")}
    assert ls_(print_labelled_sequent(s)) == s
    assert print_labelled_sequent(ls_("[x] |- x:T")) == "[x] |- x:T"
    with pytest.raises(Exception):
        ls_("[x] y:p |- x:p")


def test_shipped_labelled_derivation(monot_labelled):
    check_llbii(monot_labelled, "none")
    assert monot_labelled.conclusion == ls_(GOAL_END)
    assert "monotR" in monot_labelled.rules()


def test_hyp_and_freshness():
    check_llbii(node("hyp", ls_("[x] x:p |- x:p")))
    with pytest.raises(CheckError):
        check_llbii(node("hyp", ls_("[x>y] x:p |- y:p")))
    reuse = node("implR", ls_("[x>y] |- x:(p -> p)"), node("hyp", ls_("[x>y] y:p |- y:p")))
    with pytest.raises(CheckError) as e:
        check_llbii(reuse)
    assert "freshness" in e.value.problems[0][1]
    fresh = node("implR", ls_("[x] |- x:(p -> p)"), node("hyp", ls_("[x>y] y:p |- y:p")))
    check_llbii(fresh)


def test_monot_direction():
    check_llbii(node("monotL", ls_("[x>y] x:p |- y:p"), node("hyp", ls_("[x>y] x:p, y:p |- y:p"))))
    check_llbii(node("monotR", ls_("[x>y] x:p |- y:p"), node("hyp", ls_("[x>y] x:p |- x:p, y:p"))))
    wrong = node("monotL", ls_("[y>x] x:p |- y:p"), node("hyp", ls_("[y>x] x:p, y:p |- y:p")))
    with pytest.raises(CheckError):
        check_llbii(wrong)


def test_search_examples(monot_labelled):
    d = search_llbii_cutfree(ls_(GOAL_END), 12)
    check_llbii(d, "none")
    assert d.conclusion == monot_labelled.conclusion
    assert search_llbii_cutfree(ls_("[x] |- x:(p | (p -> F))"), 12) is None
    d = search_llbii_cutfree(ls_("[x] |- x:T"), 1)
    assert d.rule == "topR" and not d.premises
    assert search_llbii_cutfree(ls_("[x>y] x:p |- y:p"), 3).rules() == ["monotL", "hyp"]


GOALS = [
    "[x] x:(p -< q) |- x:p", "[x] x:p |- x:(q -> p)", "[x] |- x:(p -> p)",
    "[x] x:(p -> q), x:p |- x:q", "[x>y] x:(p -> q), y:p |- y:q", "[x] x:p |- x:q, x:(p -< q)",
    "[x] x:(T -< p) |- x:(T -< p)", "[y>x] y:p |- x:(p -< q), x:q",
]


@pytest.mark.parametrize("goal", GOALS)
def test_search_outputs(goal):
    d = search_llbii_cutfree(ls_(goal), 10)
    assert d is not None
    check_llbii(d, "none")
    assert not {"nodesplitU", "nodesplitD", "nodemergeU", "nodemergeD"} & set(d.rules())
    assert find_labelled_countermodel(d.conclusion, 3) is None


def test_fresh_labels_are_counter_based():
    assert fresh_label({"x"}) == "x0"
    assert fresh_label({"x", "x0", "x1"}) == "x2"
    d = search_llbii_cutfree(ls_("[x] |- x:(p -> p)"), 3)
    assert d.premises[0].conclusion.tree.nodes == {"x", "x0"}


def test_rename_examples(monot_labelled):
    s = ls_("[x>y] x:p |- y:q")
    assert rename_labels(s, {}) == s
    assert rename_labels(s, {"x": "y", "y": "x"}) == ls_("[y>x] y:p |- x:q")
    with pytest.raises(ValueError):
        rename_labels(s, {"x": "y"})
    renamed = rename_labels(monot_labelled, {"x": "a", "y": "b"})
    check_llbii(renamed, "none")
    assert renamed.conclusion == ls_("[a] a:p |- a:q, a:(r -> (p -< q) & r)")


def test_alpha_invariance_of_checker():
    d = search_llbii_cutfree(ls_(GOAL_END), 12)
    labels = sorted({x for _, n in d.nodes() for x in n.conclusion.tree.nodes})
    rng = random.Random(2)
    for _ in range(5):
        names = [f"l{i}" for i in range(len(labels))]
        rng.shuffle(names)
        check_llbii(rename_labels(d, dict(zip(labels, names))), "none")
    broken = Derivation(d.rule, d.conclusion, (rename_labels(d.premises[0], {"x": "zz"}),))
    with pytest.raises(CheckError):
        check_llbii(broken)


def test_nodesplit_then_nodemerge_restores():
    rng = random.Random(12)
    for _ in range(100):
        s = labelled_sequent(rng, 4)
        y = sorted(s.tree.nodes)[0]
        for rule, arc in (("nodesplitD", lambda x: (x, y)), ("nodesplitU", lambda x: (y, x))):
            x = fresh_label(s.tree.nodes, "s")
            c = LabelledSequent(LabelTree(s.tree.nodes | {x}, s.tree.arcs | {arc(x)}), s.ante, s.succ)
            assert nodesplit_ok(rule, c, x, y) is None
            assert split_premise(c, x, y) == s
            merged = merge_conclusion("nodemergeD" if rule == "nodesplitD" else "nodemergeU", c, *arc(x))
            assert merged == s


def test_isomorphism_and_renaming():
    rng = random.Random(5)
    for _ in range(100):
        s = labelled_sequent(rng, 4)
        labels = sorted(s.tree.nodes)
        perm = labels[:]
        rng.shuffle(perm)
        t = rename_labels(s, {a: "m" + b for a, b in zip(labels, perm)})
        assert equal_up_to_renaming(s, t)
        iso = isomorphism(s, t)
        assert iso is not None and rename_labels(s, iso) == t


def test_labelled_derivation_text_round_trip(monot_labelled):
    text = format_derivation(monot_labelled, "llbii")
    assert parse_derivation(text) == ("llbii", monot_labelled)
