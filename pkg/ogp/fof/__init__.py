"""
FOF (TPTP first-order form) subset: the common conjecture format.
"""
from .syntax import (
    Span, Variable, Function, Term, Atom, Equality, Not, And, Or, Implies, Iff,
    Forall, Exists, Formula, AnnotatedFormula, FofDocument, ROLES, constant,
)
from .parser import parse_fof
from .printer import print_fof, format_formula
from .includes import resolve_includes, load_fof, locate_include
from .horn import Rule, GivenFact, HornProblem, to_horn_rules, GUARD_PREDICATE

__all__ = [
    'Span', 'Variable', 'Function', 'Term', 'Atom', 'Equality', 'Not', 'And', 'Or',
    'Implies', 'Iff', 'Forall', 'Exists', 'Formula', 'AnnotatedFormula', 'FofDocument',
    'ROLES', 'constant',
    'parse_fof', 'print_fof', 'format_formula',
    'resolve_includes', 'load_fof', 'locate_include',
    'Rule', 'GivenFact', 'HornProblem', 'to_horn_rules', 'GUARD_PREDICATE',
]
