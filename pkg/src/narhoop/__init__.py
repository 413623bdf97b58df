"""Finite-model workbench for nonassociative right hoops (narhoops)."""

from .core import FiniteMagma, check_axioms, classify, derive

__version__ = "0.1.0"

__all__ = ["FiniteMagma", "check_axioms", "classify", "derive"]
