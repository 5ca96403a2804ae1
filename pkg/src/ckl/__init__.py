"""Proof kernel for epistemic logic with common knowledge."""

from .errors import CKLError
from .formula import (
    C,
    E,
    FALSE,
    TRUE,
    Atom,
    Bot,
    Formula,
    Imp,
    K,
    atom,
    conj,
    disj,
    group,
    iff,
    imps,
    neg,
    parse_formula,
    print_formula,
)
from .kernel import Basis, ProofNode, Theorem, Theory, check_proof
from .meta import HypDerivation, externalize, internalize, internalize_full
from .taut import is_tautology

__all__ = [
    "Atom", "Basis", "Bot", "C", "CKLError", "E", "FALSE", "Formula", "HypDerivation",
    "Imp", "K", "ProofNode", "TRUE", "Theorem", "Theory", "atom", "check_proof", "conj",
    "disj", "externalize", "group", "iff", "imps", "internalize", "internalize_full",
    "is_tautology", "neg", "parse_formula", "print_formula",
]
