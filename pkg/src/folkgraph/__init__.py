"""Embedded knowledge graph store and frame-driven value detection pipeline."""

from .terms import Binding, Pattern, Term, Triple, Variable, blank, iri, lit

__all__ = [
    "Binding",
    "Pattern",
    "Term",
    "Triple",
    "Variable",
    "blank",
    "iri",
    "lit",
]
