"""
Conversion of a flat FOF document into ground facts and range-restricted
Horn rules.

Accepted axiom shapes: a ground atom, or ``![Vars]: (a1 & ... & an => c)``
over atoms. Premise atoms ``distinct(X,Y)`` are guards, not premises.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import FrozenSet, List, NamedTuple, Set, Tuple

from ..errors import HornError
from .syntax import (
    And, Atom, Equality, FofDocument, Forall, Formula, Function, Implies, Term,
    Variable, subformulas,
)

GUARD_PREDICATE = 'distinct'


@dataclass(frozen=True)
class Rule:
    id: str
    premises: Tuple[Atom, ...]
    conclusion: Atom
    guards: Tuple[Tuple[Term, Term], ...] = ()

    @property
    def variables(self) -> FrozenSet[str]:
        names: Set[str] = set()
        for premise in self.premises:
            names |= atom_variables(premise)
        return frozenset(names)

    def __str__(self) -> str:
        body = ' & '.join(str(p) for p in self.premises)
        guards = ''.join(f' & distinct({a},{b})' for a, b in self.guards)
        return f'{self.id}: {body}{guards} => {self.conclusion}'


class GivenFact(NamedTuple):
    name: str
    atom: Atom


class HornProblem(NamedTuple):
    facts: Tuple[GivenFact, ...]
    rules: Tuple[Rule, ...]
    goal: Atom


def atom_variables(atom: Atom) -> Set[str]:
    return {a.name for a in atom.args if isinstance(a, Variable)}


def _check_flat_atom(atom: Atom, name: str) -> None:
    for arg in atom.args:
        if isinstance(arg, Function) and arg.args:
            raise HornError(f'nested function term {arg} is not supported', name)


def _conjuncts(formula: Formula, name: str) -> List[Atom]:
    if isinstance(formula, Atom):
        return [formula]
    if isinstance(formula, And):
        result: List[Atom] = []
        for operand in formula.operands:
            result.extend(_conjuncts(operand, name))
        return result
    raise HornError('premises must be a conjunction of atoms', name)


def formula_to_rule(name: str, formula: Formula) -> Rule:
    """Convert one non-ground axiom into a rule; raise HornError otherwise."""
    bound: List[str] = []
    body = formula
    while isinstance(body, Forall):
        bound.extend(body.variables)
        body = body.body
    if not isinstance(body, Implies):
        raise HornError('not a Horn clause (expected ![Vars]: (premises => conclusion))', name)
    if not isinstance(body.rhs, Atom):
        raise HornError('conclusion must be a single atom', name)

    premises: List[Atom] = []
    guards: List[Tuple[Term, Term]] = []
    for atom in _conjuncts(body.lhs, name):
        _check_flat_atom(atom, name)
        if atom.predicate == GUARD_PREDICATE and atom.arity == 2:
            guards.append((atom.args[0], atom.args[1]))
        else:
            premises.append(atom)
    conclusion = body.rhs
    _check_flat_atom(conclusion, name)

    if not premises:
        raise HornError('rule needs at least one premise besides distinct/2 guards', name)

    rule = Rule(name, tuple(premises), conclusion, tuple(guards))
    premise_vars = rule.variables
    used = set(atom_variables(conclusion)) | set(premise_vars)
    for a, b in guards:
        used |= {t.name for t in (a, b) if isinstance(t, Variable)}
    free = sorted(used - set(bound))
    if free:
        raise HornError(f"free variable(s) {', '.join(free)} not bound by a quantifier", name)

    unsafe = sorted(atom_variables(conclusion) - premise_vars)
    if unsafe:
        raise HornError(f"rule is not range-restricted: {', '.join(unsafe)} "
                        f"not in any premise", name)
    unsafe_guards = sorted({t.name for pair in guards for t in pair if isinstance(t, Variable)}
                           - premise_vars)
    if unsafe_guards:
        raise HornError(f"guard variable(s) {', '.join(unsafe_guards)} not in any premise", name)
    return rule


def to_horn_rules(doc: FofDocument) -> HornProblem:
    """
    Split a flattened document into facts, rules and the goal.

    Args:
        doc: include-free document with exactly one ground-atom conjecture

    Returns:
        HornProblem(facts, rules, goal)
    """
    if doc.includes:
        raise HornError('document still has include directives; resolve them first')

    facts: List[GivenFact] = []
    rules: List[Rule] = []
    goal = None

    for annotated in doc.formulas:
        name, formula = annotated.name, annotated.formula
        if any(isinstance(node, Equality) for node in subformulas(formula)):
            raise HornError('equality is outside the Horn fragment', name)

        if annotated.role == 'conjecture':
            if not isinstance(formula, Atom) or not formula.is_ground():
                raise HornError('conjecture must be a ground atom', name)
            _check_flat_atom(formula, name)
            goal = formula
        elif isinstance(formula, Atom):
            if not formula.is_ground():
                raise HornError(f'fact {formula} contains unbound variables', name)
            _check_flat_atom(formula, name)
            facts.append(GivenFact(name, formula))
        else:
            rules.append(formula_to_rule(name, formula))

    if goal is None:
        raise HornError('document has no conjecture')
    return HornProblem(tuple(facts), tuple(rules), goal)
