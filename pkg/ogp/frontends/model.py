"""
Dialect-neutral conjecture model and the builder every frontend feeds.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import (
    ConjectureSyntaxError, DuplicateGoalError, DuplicateLabelError, MissingGoalError,
    UndeclaredPointError, UnsupportedConstructError,
)

LABEL_RE = re.compile(r"[A-Za-z][A-Za-z0-9_']*\Z")


class StepKind(Enum):
    FREE_POINT = ('FreePoint', 0)
    MIDPOINT = ('Midpoint', 2)
    FOOT = ('Foot', 3)
    INTERSECT_LINES = ('IntersectLines', 4)
    CIRCLE_CENTER3 = ('CircleCenter3', 3)

    def __init__(self, title: str, arity: int):
        self.title = title
        self.arity = arity


GOAL_ARITIES: Dict[str, int] = {
    'collinear': 3,
    'parallel': 4,
    'perpendicular': 4,
    'congruent': 4,
    'midpoint': 3,
    'eqangle': 8,
    'cyclic': 4,
}


@dataclass(frozen=True)
class ConstructionStep:
    kind: StepKind
    output: str
    inputs: Tuple[str, ...] = ()

    def __str__(self) -> str:
        return f"{self.kind.title} {self.output} {' '.join(self.inputs)}".rstrip()


@dataclass(frozen=True)
class GoalStatement:
    predicate: str
    args: Tuple[str, ...]

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(self.args)})"


@dataclass(frozen=True)
class GeoConjecture:
    name: str
    points: Tuple[str, ...]
    steps: Tuple[ConstructionStep, ...]
    goal: GoalStatement

    def same_construction(self, other: 'GeoConjecture') -> bool:
        """Structural equality ignoring the name."""
        return (self.points, self.steps, self.goal) == (other.points, other.steps, other.goal)


class ConjectureBuilder:
    """
    Accumulates steps in source order and enforces the model invariants.

    Args:
        name: conjecture name, usually the file stem
    """

    def __init__(self, name: str = 'conjecture'):
        self.name = name
        self._points: List[str] = []
        self._defined = set()
        self._steps: List[ConstructionStep] = []
        self._goal: Optional[GoalStatement] = None
        self._goal_line: Optional[int] = None

    def _check_label(self, label: str, line: Optional[int]) -> None:
        if not LABEL_RE.match(label):
            raise ConjectureSyntaxError(f'invalid point label {label!r}', line)

    def _define(self, label: str, line: Optional[int]) -> None:
        self._check_label(label, line)
        if label in self._defined:
            raise DuplicateLabelError(f'point {label} is already defined', line)
        self._defined.add(label)
        self._points.append(label)

    def add_step(self, kind: StepKind, output: str, inputs: Sequence[str] = (),
                 line: Optional[int] = None) -> None:
        if len(inputs) != kind.arity:
            raise ConjectureSyntaxError(
                f'{kind.title} takes {kind.arity} input point(s), got {len(inputs)}', line)
        for label in inputs:
            self._check_label(label, line)
            if label not in self._defined:
                raise UndeclaredPointError(f'point {label} used before it is defined', line)
        self._define(output, line)
        self._steps.append(ConstructionStep(kind, output, tuple(inputs)))

    def free_point(self, label: str, line: Optional[int] = None) -> None:
        self.add_step(StepKind.FREE_POINT, label, (), line)

    def set_goal(self, predicate: str, args: Sequence[str], line: Optional[int] = None) -> None:
        if self._goal is not None:
            raise DuplicateGoalError(f'second goal (first one on line {self._goal_line})'
                                     if self._goal_line is not None else 'second goal', line)
        arity = GOAL_ARITIES.get(predicate)
        if arity is None:
            raise UnsupportedConstructError(f'unsupported goal {predicate}', line)
        if len(args) != arity:
            raise ConjectureSyntaxError(f'{predicate} goal takes {arity} points, got {len(args)}', line)
        for label in args:
            self._check_label(label, line)
        self._goal = GoalStatement(predicate, tuple(args))
        self._goal_line = line

    def build(self) -> GeoConjecture:
        if self._goal is None:
            raise MissingGoalError('no goal statement')
        for label in self._goal.args:
            if label not in self._defined:
                raise UndeclaredPointError(f'goal uses undeclared point {label}', self._goal_line)
        return GeoConjecture(self.name, tuple(self._points), tuple(self._steps), self._goal)
