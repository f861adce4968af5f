"""
GeoConjecture -> FOF translation shared by every filter*toFOF command.
"""
from typing import Dict, List, Tuple

from ..config import DEFAULT_AXIOMS
from ..errors import FilterError
from ..fof.syntax import SYMBOL_RE, AnnotatedFormula, Atom, FofDocument, Function
from ..frontends.model import GeoConjecture, StepKind

GOAL_PREDICATES = {
    'collinear': 'coll',
    'parallel': 'para',
    'perpendicular': 'perp',
    'congruent': 'cong',
    'midpoint': 'midp',
    'eqangle': 'eqangle',
    'cyclic': 'cyclic',
}


def constant_names(c: GeoConjecture) -> Dict[str, str]:
    """Map each point label to its lowercase FOF constant."""
    names: Dict[str, str] = {}
    owners: Dict[str, str] = {}
    for label in c.points:
        symbol = label.lower()
        if not SYMBOL_RE.match(symbol):
            raise FilterError(f'point label {label!r} is not expressible as a FOF constant')
        if symbol in owners:
            raise FilterError(f'points {owners[symbol]} and {label} collide after lowercasing')
        owners[symbol] = label
        names[label] = symbol
    return names


def _atom(predicate: str, labels: Tuple[str, ...], names: Dict[str, str]) -> Atom:
    return Atom(predicate, tuple(Function(names[label]) for label in labels))


def step_atoms(kind: StepKind, output: str, inputs: Tuple[str, ...], names: Dict[str, str]) -> List[Atom]:
    if kind is StepKind.FREE_POINT:
        return []
    if kind is StepKind.MIDPOINT:
        return [_atom('midp', (output,) + inputs, names)]
    if kind is StepKind.FOOT:
        p, a, b = inputs
        return [_atom('perp', (p, output, a, b), names), _atom('coll', (output, a, b), names)]
    if kind is StepKind.INTERSECT_LINES:
        a, b, c, d = inputs
        return [_atom('coll', (output, a, b), names), _atom('coll', (output, c, d), names)]
    if kind is StepKind.CIRCLE_CENTER3:
        return [_atom('circle', (output,) + inputs, names)]
    raise FilterError(f'no FOF mapping for {kind.title}')


def conjecture_to_fof(c: GeoConjecture, axiom_include: str = DEFAULT_AXIOMS) -> FofDocument:
    """
    Translate a conjecture into a FOF problem.

    Args:
        c: parsed conjecture
        axiom_include: path placed in the single include directive

    Returns:
        FofDocument with hypotheses h1..hn in step order and conjecture ``goal``
    """
    names = constant_names(c)
    formulas: List[AnnotatedFormula] = []
    for step in c.steps:
        for atom in step_atoms(step.kind, step.output, step.inputs, names):
            formulas.append(AnnotatedFormula(f'h{len(formulas) + 1}', 'hypothesis', atom))
    goal = _atom(GOAL_PREDICATES[c.goal.predicate], c.goal.args, names)
    formulas.append(AnnotatedFormula('goal', 'conjecture', goal))
    return FofDocument((axiom_include,), tuple(formulas))
