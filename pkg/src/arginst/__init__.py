"""Instantiate abstract argumentation frameworks from propositional knowledge bases."""
from .attacks import Attack, AttackType, attacks_between, compute_attacks, support_conjunction
from .formula import (
    And,
    Atom,
    Formula,
    Iff,
    Imp,
    Interpretation,
    Neg,
    Or,
    Xor,
    atoms,
    evaluate,
    parse_formula,
    print_formula,
    subformulae,
)
from .instantiate import (
    Argument,
    ClaimSet,
    KnowledgeBase,
    candidate_supports,
    enumerate_arguments,
    is_minimal_support,
)
from .logic import FormulaSet, entails, enumerate_models, is_consistent, is_equivalent
from .semantics import ArgumentationFramework, is_conflict_free, is_stable, stable_extensions

__version__ = "0.1.0"
