"""Acceptance criteria.

Run under pytest (one PASS/FAIL line per criterion appears in the terminal
summary) or directly with ``python tests/test_acceptance.py``.
"""

import itertools
import os
import random
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from biint.corpus import CHECKERS, corpus_derivations, data_dir, load_derivation, run_corpus
from biint.derivation import CheckError
from biint.kripke import eval_formula, find_countermodel
from biint.labelled import (
    LabelledSequent,
    LabelTree,
    equal_up_to_renaming,
    search_llbii_cutfree,
)
from biint.lbii import check_lbii, cut_profile, permute_cut, search_lbii_cutfree
from biint.nested import search_nlbii_cutfree
from biint.syntax import parse_formula, parse_nested_sequent, parse_sequent, print_formula
from biint.translate import (
    flatten_sequent,
    lton,
    ntol,
    readdress,
    translate_llbii_to_nlbii,
    translate_nlbii_to_lbii,
    translate_nlbii_to_llbii,
)

from generators import formula, kripke_tree, labelled_sequent, nested_sequent

COUNTEREXAMPLE = "p |- q, r -> ((p -< q) & r)"
RESULTS = {}

_cache = {}


def shipped(name):
    return load_derivation(data_dir() / f"{name}.deriv")[1]


def derivations():
    if "all" not in _cache:
        _cache["all"] = corpus_derivations(run_corpus())
    return _cache["all"]


def checks(calc, d, cuts="full"):
    try:
        CHECKERS[calc](d, cuts)
    except CheckError:
        return False
    return True


def root_of(d):
    return min(d.conclusion.tree.nodes)


def standard_image(calc, d):
    """The end-sequent of d as a standard sequent."""
    if calc == "lbii":
        return d.conclusion
    if calc == "nlbii":
        return flatten_sequent(d.conclusion)
    return flatten_sequent(lton(d.conclusion, root_of(d)))


# -- criteria -----------------------------------------------------------------------------

def counterexample_suite():
    s = COUNTEREXAMPLE
    a = search_lbii_cutfree(parse_sequent(s), 12) is None
    b = (
        checks("lbii", shipped("cut-standard"), "full")
        and checks("nlbii", shipped("unnest-nested"), "none")
        and checks("llbii", shipped("monot-labelled"), "none")
    )
    n = search_nlbii_cutfree(parse_nested_sequent(s), 12)
    lab = search_llbii_cutfree(ntol(parse_nested_sequent(s), "x"), 12)
    c = n is not None and lab is not None and checks("nlbii", n, "none") and checks("llbii", lab, "none")
    return a and b and c, f"lbii exhausted={a} shipped checks={b} nlbii/llbii found={c}"


def semantic_soundness():
    found = derivations()
    names = {n for n, _, _ in found}
    shipped_in = {"cut-standard", "unnest-nested", "monot-labelled"} <= names
    bad = []
    for name, calc, d in found:
        if not checks(calc, d) or find_countermodel(standard_image(calc, d), 3) is not None:
            bad.append(name)
    per_calc = {c: sum(1 for _, k, _ in found if k == c) for c in ("lbii", "nlbii", "llbii")}
    ok = len(found) >= 20 and shipped_in and not bad
    return ok, f"{len(found)} derivations {per_calc}, unsound={bad}"


def oracle_sanity():
    em = find_countermodel(parse_sequent("|- p | (p -> F)"), 2)
    em_ok = em is not None and not eval_formula(em[0], em[1], parse_formula("p | (p -> F)"))
    lost = find_countermodel(parse_sequent("p, r |- (p -< q) & r"), 2)
    lost_ok = lost is not None and len(lost[0].worlds) <= 2
    return em_ok and lost_ok, f"excluded middle falsified={em_ok}, lost-premise model={lost_ok}"


def unnest_only_translation():
    sources = [(n, d) for n, c, d in derivations() if c == "nlbii" and checks("nlbii", d, "none")]
    bad, profiles = [], {}
    for name, d in sources:
        out = translate_nlbii_to_lbii(d)
        has_unnest = any(x.rule.startswith("unnest") for _, x in d.nodes())
        prof = cut_profile(out)
        profiles[prof] = profiles.get(prof, 0) + 1
        expected = "unnest-only" if has_unnest else "none"
        if not checks("lbii", out, "unnest-cut-only") or prof != expected or out.conclusion != flatten_sequent(d.conclusion):
            bad.append(name)
    ok = bool(sources) and not bad and profiles.get("unnest-only", 0) > 0
    return ok, f"{len(sources)} cut-free nested derivations, profiles={profiles}, bad={bad}"


def three_node_trees():
    labels = ("a", "b", "c")
    for arcs in itertools.combinations([(u, v) for u in labels for v in labels if u != v], 2):
        try:
            yield LabelTree(set(labels), set(arcs))
        except ValueError:
            continue


def coherence_and_readdressing():
    bad = []
    for name, calc, d in derivations():
        if calc == "llbii":
            r = root_of(d)
            out = translate_llbii_to_nlbii(d, r)
            if not checks("nlbii", out) or out.conclusion != lton(d.conclusion, r):
                bad.append(name)
        elif calc == "nlbii":
            out = translate_nlbii_to_llbii(d, "x")
            if not checks("llbii", out) or out.conclusion != ntol(d.conclusion, "x"):
                bad.append(name)
    trees = list(three_node_trees())
    pairs = 0
    for tree in trees:
        for holder in sorted(tree.nodes):
            ls = LabelledSequent(tree, (("a", parse_formula("q")), (holder, parse_formula("p"))), ((holder, parse_formula("p")), ("c", parse_formula("r"))))
            base = search_llbii_cutfree(ls, 4)
            for z in sorted(tree.nodes):
                at_z = translate_llbii_to_nlbii(base, z)
                for x in sorted(tree.nodes):
                    pairs += 1
                    out = readdress(at_z, ls, z, x)
                    if not checks("nlbii", out, "none") or out.conclusion != lton(ls, x):
                        bad.append((str(tree), holder, z, x))
    ok = not bad and len(trees) == 12
    return ok, f"{len(trees)} three-node trees, {pairs} readdress pairs, failures={bad[:5]}"


def sequent_round_trips():
    rng = random.Random(2024)
    nested_bad = 0
    for _ in range(100):
        s = nested_sequent(rng, 3)
        if lton(ntol(s, "x"), "x") != s:
            nested_bad += 1
    labelled_bad = 0
    for _ in range(100):
        ls = labelled_sequent(rng, 4)
        x = rng.choice(sorted(ls.tree.nodes))
        if not equal_up_to_renaming(ntol(lton(ls, x), x), ls):
            labelled_bad += 1
    return nested_bad == labelled_bad == 0, f"nested failures={nested_bad}/100, labelled failures={labelled_bad}/100"


def monotonicity():
    rng = random.Random(7)
    violations = 0
    for _ in range(500):
        k = kripke_tree(rng, 4)
        f = formula(rng, 5, ("p", "q", "r"))
        strict = sorted((a, b) for a, b in k.order if a != b)
        w, v = rng.choice(strict or sorted(k.order))
        if eval_formula(k, w, f) and not eval_formula(k, v, f):
            violations += 1
    return violations == 0, f"500 instances, violations={violations}"


def cut_permutation():
    d = shipped("cut-standard")
    out = permute_cut(d)
    try:
        check_lbii(out, "full", extended=True)
        ok = True
    except CheckError:
        ok = False
    same = out.conclusion == d.conclusion
    return ok and same, f"extended check={ok}, same end-sequent={same}, root={out.rule}"


def parser_round_trip():
    rng = random.Random(99)
    bad = 0
    for _ in range(1000):
        f = formula(rng, rng.randint(0, 8))
        if parse_formula(print_formula(f)) != f:
            bad += 1
    return bad == 0, f"1000 formulas, failures={bad}"


CRITERIA = [
    ("1 counterexample suite", counterexample_suite),
    ("2 semantic soundness", semantic_soundness),
    ("3 oracle sanity", oracle_sanity),
    ("4 unnest-only flattening", unnest_only_translation),
    ("5 translation coherence and readdressing", coherence_and_readdressing),
    ("6 sequent round trips", sequent_round_trips),
    ("7 monotonicity", monotonicity),
    ("8 cut permutation", cut_permutation),
    ("9 parser round trip", parser_round_trip),
]


def report_line(label, ok, detail):
    return f"{'PASS' if ok else 'FAIL'}  criterion {label}: {detail}"


@pytest.mark.parametrize("label, criterion", CRITERIA, ids=[c[0].split()[0] for c in CRITERIA])
def test_criterion(label, criterion):
    ok, detail = criterion()
    RESULTS[label] = (ok, detail)
    print(report_line(label, ok, detail))
    assert ok, detail


if __name__ == "__main__":
    failed = 0
    for label, criterion in CRITERIA:
        ok, detail = criterion()
        failed += not ok
        print(report_line(label, ok, detail))
    sys.exit(1 if failed else 0)
