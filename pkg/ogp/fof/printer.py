"""
Canonical FOF printer.

Parentheses are emitted only where the parser would otherwise build a
different tree: a child binds looser than, or as loose as, its n-ary
parent.
"""
from .syntax import (
    And, AnnotatedFormula, Atom, Equality, Exists, FofDocument, Forall, Formula,
    Iff, Implies, Not, Or,
)

_UNARY = 4


def precedence(formula: Formula) -> int:
    if isinstance(formula, (Implies, Iff)):
        return 1
    if isinstance(formula, Or):
        return 2
    if isinstance(formula, And):
        return 3
    return _UNARY


def _wrap(formula: Formula, minimum: int) -> str:
    text = format_formula(formula)
    return f'({text})' if precedence(formula) < minimum else text


def format_formula(formula: Formula) -> str:
    if isinstance(formula, Atom):
        return str(formula)
    if isinstance(formula, Equality):
        operator = '!=' if formula.negated else '='
        return f'{formula.lhs} {operator} {formula.rhs}'
    if isinstance(formula, Not):
        return '~' + _wrap(formula.body, _UNARY)
    if isinstance(formula, And):
        return ' & '.join(_wrap(o, _UNARY) for o in formula.operands)
    if isinstance(formula, Or):
        return ' | '.join(_wrap(o, 3) for o in formula.operands)
    if isinstance(formula, (Implies, Iff)):
        operator = '=>' if isinstance(formula, Implies) else '<=>'
        return f'{_wrap(formula.lhs, 2)} {operator} {_wrap(formula.rhs, 2)}'
    if isinstance(formula, (Forall, Exists)):
        quantifier = '!' if isinstance(formula, Forall) else '?'
        return f"{quantifier}[{','.join(formula.variables)}]: {_wrap(formula.body, _UNARY)}"
    raise TypeError(f'not a formula: {formula!r}')


def format_annotated(annotated: AnnotatedFormula) -> str:
    return f'fof({annotated.name},{annotated.role},{format_formula(annotated.formula)}).'


def format_include(path: str) -> str:
    escaped = path.replace('\\', '\\\\').replace("'", "\\'")
    return f"include('{escaped}')."


def print_fof(doc: FofDocument) -> str:
    """One item per line, includes first; empty document prints as ''."""
    lines = [format_include(p) for p in doc.includes]
    lines.extend(format_annotated(f) for f in doc.formulas)
    if not lines:
        return ''
    return '\n'.join(lines) + '\n'
