"""Positive-bounded-formula engine: syntax, parsing, structures, semantics."""

from .approx import is_approximation, relax, weak_negation
from .nets import encode_sequence_window, wneg_xi, xi_E, xi_formula
from .parser import parse_formula
from .semantics import (
    approx_satisfies,
    critical_values,
    eval_term,
    satisfaction_gap,
    satisfies,
)
from .structure import (
    FiniteStructure,
    SortData,
    discrete_sort,
    line_sort,
    structure_from_json,
    structure_to_json,
)
from .syntax import (
    REAL,
    And,
    App,
    AtomGe,
    AtomLe,
    Const,
    Exists,
    Forall,
    Formula,
    Lit,
    Or,
    Signature,
    Term,
    Var,
    apply,
    conj,
    disj,
    format_formula,
    format_term,
    free_vars,
)

__all__ = [
    "REAL",
    "And",
    "App",
    "AtomGe",
    "AtomLe",
    "Const",
    "Exists",
    "FiniteStructure",
    "Forall",
    "Formula",
    "Lit",
    "Or",
    "Signature",
    "SortData",
    "Term",
    "Var",
    "apply",
    "approx_satisfies",
    "conj",
    "critical_values",
    "discrete_sort",
    "disj",
    "encode_sequence_window",
    "eval_term",
    "format_formula",
    "format_term",
    "free_vars",
    "is_approximation",
    "line_sort",
    "parse_formula",
    "relax",
    "satisfaction_gap",
    "satisfies",
    "structure_from_json",
    "structure_to_json",
    "weak_negation",
    "wneg_xi",
    "xi_E",
    "xi_formula",
]
