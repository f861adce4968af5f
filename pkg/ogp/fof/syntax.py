"""
Abstract syntax for the FOF subset.

All nodes are frozen dataclasses, so structural equality is plain ``==`` and
documents can be shared between threads. Source spans never take part in
equality.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterator, Tuple, Union

VARIABLE_RE = re.compile(r'[A-Z][A-Za-z0-9_]*\Z')
SYMBOL_RE = re.compile(r'[a-z][A-Za-z0-9_]*\Z')

ROLES = ('axiom', 'hypothesis', 'definition', 'conjecture')


@dataclass(frozen=True)
class Span:
    line: int
    column: int

    def __str__(self) -> str:
        return f'{self.line}:{self.column}'


@dataclass(frozen=True)
class Variable:
    name: str

    def __post_init__(self):
        if not VARIABLE_RE.match(self.name):
            raise ValueError(f'invalid variable name: {self.name!r}')

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Function:
    symbol: str
    args: Tuple['Term', ...] = ()

    def __post_init__(self):
        if not SYMBOL_RE.match(self.symbol):
            raise ValueError(f'invalid function symbol: {self.symbol!r}')

    @property
    def is_constant(self) -> bool:
        return not self.args

    def __str__(self) -> str:
        if not self.args:
            return self.symbol
        return f"{self.symbol}({','.join(str(a) for a in self.args)})"


Term = Union[Variable, Function]


def constant(symbol: str) -> Function:
    return Function(symbol)


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: Tuple[Term, ...] = ()

    def __post_init__(self):
        if not SYMBOL_RE.match(self.predicate):
            raise ValueError(f'invalid predicate symbol: {self.predicate!r}')

    @property
    def arity(self) -> int:
        return len(self.args)

    def is_ground(self) -> bool:
        return all(is_ground_term(a) for a in self.args)

    def __str__(self) -> str:
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(str(a) for a in self.args)})"


@dataclass(frozen=True)
class Equality:
    lhs: Term
    rhs: Term
    negated: bool = False


@dataclass(frozen=True)
class Not:
    body: 'Formula'


@dataclass(frozen=True)
class And:
    operands: Tuple['Formula', ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError('conjunction needs at least two operands')


@dataclass(frozen=True)
class Or:
    operands: Tuple['Formula', ...]

    def __post_init__(self):
        if len(self.operands) < 2:
            raise ValueError('disjunction needs at least two operands')


@dataclass(frozen=True)
class Implies:
    lhs: 'Formula'
    rhs: 'Formula'


@dataclass(frozen=True)
class Iff:
    lhs: 'Formula'
    rhs: 'Formula'


def _check_quantified(variables: Tuple[str, ...]) -> None:
    if not variables:
        raise ValueError('quantifier needs at least one variable')
    if len(set(variables)) != len(variables):
        raise ValueError(f"duplicate quantified variable in [{','.join(variables)}]")
    for name in variables:
        if not VARIABLE_RE.match(name):
            raise ValueError(f'invalid variable name: {name!r}')


@dataclass(frozen=True)
class Forall:
    variables: Tuple[str, ...]
    body: 'Formula'

    def __post_init__(self):
        _check_quantified(self.variables)


@dataclass(frozen=True)
class Exists:
    variables: Tuple[str, ...]
    body: 'Formula'

    def __post_init__(self):
        _check_quantified(self.variables)


Formula = Union[Atom, Equality, Not, And, Or, Implies, Iff, Forall, Exists]


@dataclass(frozen=True)
class AnnotatedFormula:
    name: str
    role: str
    formula: Formula
    span: Span = field(default=Span(0, 0), compare=False)


@dataclass(frozen=True)
class FofDocument:
    includes: Tuple[str, ...] = ()
    formulas: Tuple[AnnotatedFormula, ...] = ()

    @property
    def conjecture(self):
        for annotated in self.formulas:
            if annotated.role == 'conjecture':
                return annotated
        return None

    def names(self) -> Tuple[str, ...]:
        return tuple(f.name for f in self.formulas)

    def by_role(self, role: str) -> Tuple[AnnotatedFormula, ...]:
        return tuple(f for f in self.formulas if f.role == role)


def is_ground_term(term: Term) -> bool:
    if isinstance(term, Variable):
        return False
    return all(is_ground_term(a) for a in term.args)


def subformulas(formula: Formula) -> Iterator[Formula]:
    """Pre-order walk over a formula."""
    yield formula
    if isinstance(formula, Not):
        yield from subformulas(formula.body)
    elif isinstance(formula, (And, Or)):
        for operand in formula.operands:
            yield from subformulas(operand)
    elif isinstance(formula, (Implies, Iff)):
        yield from subformulas(formula.lhs)
        yield from subformulas(formula.rhs)
    elif isinstance(formula, (Forall, Exists)):
        yield from subformulas(formula.body)


def atoms(formula: Formula) -> Iterator[Atom]:
    for node in subformulas(formula):
        if isinstance(node, Atom):
            yield node


def depth(formula: Formula) -> int:
    if isinstance(formula, (Atom, Equality)):
        return 1
    if isinstance(formula, Not):
        return 1 + depth(formula.body)
    if isinstance(formula, (And, Or)):
        return 1 + max(depth(o) for o in formula.operands)
    if isinstance(formula, (Implies, Iff)):
        return 1 + max(depth(formula.lhs), depth(formula.rhs))
    return 1 + depth(formula.body)
