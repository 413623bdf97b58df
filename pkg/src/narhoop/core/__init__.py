"""Finite models, derived order structure and axiom checking."""

from .axioms import AXIOMS, CLASS_AXIOMS, CLASSES, NARHOOP_BASIS, REPORT_ORDER
from .checks import (
    AxiomReport,
    Classification,
    DerivedStructure,
    Verdict,
    check_axioms,
    check_residuation,
    class_mask,
    classify,
    derive,
    is_narhoop,
    is_right_residuated_wrt,
    is_rres,
    is_unital,
    replay,
    sqcap_table,
)
from .magma import FiniteMagma, stack_tables

__all__ = [
    "AXIOMS", "CLASS_AXIOMS", "CLASSES", "NARHOOP_BASIS", "REPORT_ORDER",
    "AxiomReport", "Classification", "DerivedStructure", "Verdict", "FiniteMagma",
    "check_axioms", "check_residuation", "class_mask", "classify", "derive",
    "is_narhoop", "is_right_residuated_wrt", "is_rres", "is_unital", "replay",
    "sqcap_table", "stack_tables",
]
