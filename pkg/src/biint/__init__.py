"""Bi-intuitionistic propositional logic: standard, nested and labelled sequent calculi.

Checkers, bounded cut-free proof search, translations between the three
calculi and a finite Kripke-tree countermodel finder.
"""

from .derivation import CheckError, CutPolicy, Derivation, format_derivation, parse_derivation
from .kripke import KripkeTree, eval_formula, find_countermodel, find_labelled_countermodel
from .labelled import (
    LabelledSequent,
    LabelTree,
    check_llbii,
    equal_up_to_renaming,
    parse_labelled_sequent,
    print_labelled_sequent,
    search_llbii_cutfree,
)
from .lbii import (
    apply_unnest_rules,
    check_lbii,
    cut_profile,
    dual_derivation,
    permute_cut,
    search_lbii_cutfree,
)
from .nested import check_nlbii, search_nlbii_cutfree
from .syntax import (
    BOT,
    TOP,
    And,
    Atom,
    Bot,
    Excl,
    Formula,
    Impl,
    Or,
    ParseError,
    Sequent,
    Top,
    parse_formula,
    parse_nested_sequent,
    parse_sequent,
    print_formula,
    print_sequent,
)
from .translate import (
    embed_lbii_to_nlbii,
    flatten_sequent,
    lton,
    ntol,
    readdress,
    translate_lbii_to_llbii,
    translate_llbii_to_lbii,
    translate_llbii_to_nlbii,
    translate_nlbii_to_lbii,
    translate_nlbii_to_llbii,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
