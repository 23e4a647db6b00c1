import random

import pytest

from biint.derivation import CheckError, Derivation
from biint.kripke import find_countermodel
from biint.lbii import node
from biint.nested import check_nlbii, is_nlbii_derivation, nest_premises, search_nlbii_cutfree, unnest_conclusions
from biint.syntax import parse_nested_sequent

from conftest import COUNTEREXAMPLE
from generators import nested_sequent

ns = parse_nested_sequent


def test_shipped_nested_derivation(unnest_nested):
    check_nlbii(unnest_nested, "none")
    assert unnest_nested.rule == "unnestL"
    assert unnest_nested.conclusion == ns(COUNTEREXAMPLE)


def test_nested_members_are_inert_for_hyp():
    check_nlbii(node("hyp", ns("p, [q |- r] |- p")))
    with pytest.raises(CheckError):
        check_nlbii(node("hyp", ns("[p |- p] |- [p |- p]")))


def test_unnest_schema_mismatch():
    bad = node("unnestL", ns("p |- q"), node("hyp", ns("p |- p, q")))
    with pytest.raises(CheckError) as e:
        check_nlbii(bad)
    assert e.value.problems[0][0] == ()
    bad = node("unnestL", ns("p |- q, r"), node("weakR", ns("[p |- q] |- r"), node("hyp", ns("[p |- q] |- "))))
    assert not is_nlbii_derivation(bad)


def test_nest_and_unnest_schemas():
    assert nest_premises("nestL", ns("g, [a |- b] |- d")) == [ns("a |- b, d")]
    assert nest_premises("nestR", ns("g |- [a |- b], d")) == [ns("g, a |- b")]
    assert unnest_conclusions("unnestL", ns("g, [a |- b] |- d")) == [ns("g, a |- b, d")]
    assert unnest_conclusions("unnestR", ns("g |- [a |- b], d")) == [ns("g, a |- b, d")]


def test_unnest_policy_is_rejected(unnest_nested):
    with pytest.raises(ValueError):
        check_nlbii(unnest_nested, "unnest")


def test_nesting_side_matters():
    # an antecedent member reads as exclusion, a succedent member as implication
    s = ns("[p |- q] |- [p |- q]")
    assert find_countermodel(s, 3) is not None
    assert search_nlbii_cutfree(s, 8) is None


def test_search_examples():
    d = search_nlbii_cutfree(ns(COUNTEREXAMPLE), 10)
    check_nlbii(d, "none")
    assert d.conclusion == ns(COUNTEREXAMPLE)
    d = search_nlbii_cutfree(ns("|- [p |- p]"), 3)
    assert d.rules() == ["nestR", "hyp"]
    assert search_nlbii_cutfree(ns("p |- q"), 5) is None
    assert find_countermodel(ns("p |- q"), 1) is not None


GOALS = [
    "[p |- q] |- p -< q", "p -> q |- [p |- q]", "[p |- q] |- [ |- p -< q]",
    "|- [p, q |- q]", "|- [p -< q |- p]", "p |- [ |- p]", "q |- [p |- q]",
    "[p |- q] |- p -< q, [r |- r]",
]


@pytest.mark.parametrize("goal", GOALS)
def test_search_outputs_check_and_are_sound(goal):
    d = search_nlbii_cutfree(ns(goal), 10)
    assert d is not None
    check_nlbii(d, "none")
    assert d.conclusion == ns(goal)
    assert find_countermodel(d.conclusion, 3) is None


def permute(s, rng):
    """The same nested sequent with every member list shuffled."""
    ante = [permute(m, rng) if hasattr(m, "ante") else m for m in s.ante]
    succ = [permute(m, rng) if hasattr(m, "ante") else m for m in s.succ]
    rng.shuffle(ante)
    rng.shuffle(succ)
    return type(s)(tuple(ante), tuple(succ))


def rebuild(d: Derivation, rng) -> Derivation:
    return Derivation(d.rule, permute(d.conclusion, rng), tuple(rebuild(p, rng) for p in d.premises), d.meta)


def test_checker_is_invariant_under_member_permutation(unnest_nested):
    rng = random.Random(4)
    for _ in range(20):
        assert rebuild(unnest_nested, rng) == unnest_nested
        check_nlbii(rebuild(unnest_nested, rng), "none")


def test_recursive_multiset_equality():
    rng = random.Random(8)
    for _ in range(100):
        s = nested_sequent(rng)
        assert permute(s, rng) == s
        assert hash(permute(s, rng)) == hash(s)
