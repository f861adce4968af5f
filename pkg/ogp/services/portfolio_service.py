"""
Simple-syntactic portfolio: features -> policy -> time-sliced schedule.
"""
import json
import threading
import time
from collections import Counter
from concurrent.futures import FIRST_COMPLETED, ThreadPoolExecutor, wait
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional, Tuple, Union

from pydantic import BaseModel, Field, ValidationError

from ..errors import PortfolioError
from ..fof.syntax import Exists, FofDocument, Forall, atoms, depth, subformulas
from ..logger import get_logger
from ..models import ProverStatus, RunReport, describe_validation_error
from .prover_service import ProverService
from .registry import Registry

logger = get_logger('portfolio')

PORTFOLIO_NAME = 'portfolio'
DD_VOCABULARY = frozenset({'coll', 'para', 'perp', 'midp', 'cong', 'eqangle', 'cyclic', 'circle'})
FIRST_SLOT_SHARE = 0.6
# placeholder in a preference list for every external prover, registry order
EXTERNALS = '@externals'


@dataclass(frozen=True)
class SyntacticFeatures:
    hypothesis_count: int = 0
    predicate_multiset: Dict[str, int] = field(default_factory=dict)
    dd_vocabulary_only: bool = True
    has_quantifiers: bool = False
    max_formula_depth: int = 0

    def value(self, name: str) -> Any:
        if name == 'predicates':
            return set(self.predicate_multiset)
        if not hasattr(self, name):
            raise PortfolioError(f'unknown feature {name!r}')
        return getattr(self, name)


def extract_features(doc: FofDocument) -> SyntacticFeatures:
    """
    Order-insensitive syntactic features of a problem.

    Args:
        doc: flattened problem (an unresolved include counts as nothing)

    Returns:
        SyntacticFeatures
    """
    hypotheses = [f for f in doc.formulas if f.role != 'axiom']
    predicates: Counter = Counter()
    has_quantifiers = False
    max_depth = 0
    for annotated in hypotheses:
        for atom in atoms(annotated.formula):
            predicates[atom.predicate] += 1
        if any(isinstance(node, (Forall, Exists)) for node in subformulas(annotated.formula)):
            has_quantifiers = True
        max_depth = max(max_depth, depth(annotated.formula))
    return SyntacticFeatures(
        hypothesis_count=sum(1 for f in hypotheses if f.role in ('hypothesis', 'definition')),
        predicate_multiset=dict(sorted(predicates.items())),
        dd_vocabulary_only=set(predicates) <= DD_VOCABULARY,
        has_quantifiers=has_quantifiers,
        max_formula_depth=max_depth,
    )


class Condition(BaseModel):
    feature: str
    op: Literal['==', '!=', '<', '<=', '>', '>=', 'contains'] = '=='
    value: Any = True

    def holds(self, features: SyntacticFeatures) -> bool:
        actual = features.value(self.feature)
        if self.op == 'contains':
            return self.value in actual
        try:
            return {
                '==': lambda a, b: a == b,
                '!=': lambda a, b: a != b,
                '<': lambda a, b: a < b,
                '<=': lambda a, b: a <= b,
                '>': lambda a, b: a > b,
                '>=': lambda a, b: a >= b,
            }[self.op](actual, self.value)
        except TypeError:
            raise PortfolioError(f'cannot compare {self.feature} with {self.value!r}') from None


class PolicyRule(BaseModel):
    when: List[Condition] = Field(min_length=1)
    prefer: List[str] = Field(min_length=1)

    def matches(self, features: SyntacticFeatures) -> bool:
        return all(c.holds(features) for c in self.when)


class PolicyTable(BaseModel):
    """Ordered rules; the first whose conditions all hold fixes the preference order."""
    rules: List[PolicyRule] = Field(default_factory=list)
    default: List[str] = Field(min_length=1)

    def preference(self, features: SyntacticFeatures) -> List[str]:
        for rule in self.rules:
            if rule.matches(features):
                return list(rule.prefer)
        return list(self.default)


DEFAULT_POLICY = PolicyTable(
    rules=[PolicyRule(when=[Condition(feature='dd_vocabulary_only', op='==', value=True)],
                      prefer=['ddfa', EXTERNALS])],
    default=[EXTERNALS, 'ddfa'],
)


def load_policy(path: Optional[Union[str, Path]] = None) -> PolicyTable:
    """Read ``ogp-policy.json``; the shipped default when ``path`` is None."""
    if path is None:
        return DEFAULT_POLICY
    try:
        data = json.loads(Path(path).read_text(encoding='utf-8'))
        return PolicyTable.model_validate(data)
    except (OSError, ValueError) as e:
        if isinstance(e, ValidationError):
            raise PortfolioError(f'{path}: {describe_validation_error(e)}') from None
        raise PortfolioError(f'{path}: {e}') from None


@dataclass(frozen=True)
class PortfolioPlan:
    slots: Tuple[Tuple[str, int], ...]

    @property
    def total_ms(self) -> int:
        return sum(budget for _, budget in self.slots)

    def provers(self) -> List[str]:
        return [name for name, _ in self.slots]


def split_budget(count: int, global_timeout_ms: int) -> List[int]:
    """60% (at least 1 ms) to the first slot, the rest evenly, integer remainder to the last slot."""
    if count <= 0:
        return []
    if count == 1:
        return [global_timeout_ms]
    first = max(1, int(global_timeout_ms * FIRST_SLOT_SHARE)) if global_timeout_ms >= 1 else 0
    rest = global_timeout_ms - first
    share, remainder = divmod(rest, count - 1)
    budgets = [first] + [share] * (count - 1)
    budgets[-1] += remainder
    return budgets


def select(features: SyntacticFeatures, registry: Registry, policy: PolicyTable,
           global_timeout_ms: int) -> PortfolioPlan:
    """
    Pick provers and slice the global budget.

    Returns:
        PortfolioPlan; unregistered provers are skipped

    Raises:
        PortfolioError: no registered prover left, or a zero budget slot
    """
    ordered: List[str] = []
    for name in policy.preference(features):
        names = registry.externals() if name == EXTERNALS else [name]
        for candidate in names:
            if candidate in registry and candidate not in ordered:
                ordered.append(candidate)
    if not ordered:
        raise PortfolioError('no registered prover in the policy preference list')
    budgets = split_budget(len(ordered), global_timeout_ms)
    slots = [(name, budget) for name, budget in zip(ordered, budgets) if budget > 0]
    if not slots:
        raise PortfolioError(f'timeout {global_timeout_ms} ms is too small to schedule')
    return PortfolioPlan(tuple(slots))


def _summary(report: RunReport) -> str:
    return f'{report.prover}={report.status.value} ({report.time_ms} ms)'


class PortfolioService:
    """
    Runs a plan through a ProverService.

    Args:
        prover_service: executes the individual slots
        policy: preference table
    """

    def __init__(self, prover_service: ProverService, policy: Optional[PolicyTable] = None):
        self.prover_service = prover_service
        self.policy = policy or DEFAULT_POLICY

    def plan(self, doc: FofDocument, global_timeout_ms: int) -> PortfolioPlan:
        features = extract_features(doc)
        plan = select(features, self.prover_service.registry, self.policy, global_timeout_ms)
        logger.info(f"Portfolio plan: {', '.join(f'{n}:{b}ms' for n, b in plan.slots)}")
        return plan

    def execute(self, plan: PortfolioPlan, conjecture_file: str, source_format: Optional[str] = None,
                parallel: bool = False) -> RunReport:
        if parallel:
            return self._execute_parallel(plan, conjecture_file, source_format)
        return self._execute_sequential(plan, conjecture_file, source_format)

    def _aggregate(self, winner: Optional[RunReport], reports: List[RunReport], started: float) -> RunReport:
        elapsed = int((time.monotonic() - started) * 1000)
        slots = '; '.join(_summary(r) for r in reports)
        if winner is not None:
            detail = f'won by {winner.prover}'
            if winner.detail:
                detail += f' ({winner.detail})'
            return winner.model_copy(update={'time_ms': elapsed, 'detail': f'{detail}; slots: {slots}'})
        return RunReport(prover=PORTFOLIO_NAME, status=ProverStatus.UNKNOWN, time_ms=elapsed,
                         raw_output='\n'.join(r.raw_output for r in reports if r.raw_output),
                         detail=f'no definitive verdict; slots: {slots}')

    def _execute_sequential(self, plan: PortfolioPlan, conjecture_file: str,
                            source_format: Optional[str]) -> RunReport:
        started = time.monotonic()
        reports: List[RunReport] = []
        for name, budget in plan.slots:
            logger.info(f"Portfolio slot {name} ({budget} ms)")
            report = self.prover_service.run(name, conjecture_file, source_format, budget)
            reports.append(report)
            if report.status.definitive:
                return self._aggregate(report, reports, started)
        return self._aggregate(None, reports, started)

    def _execute_parallel(self, plan: PortfolioPlan, conjecture_file: str,
                          source_format: Optional[str]) -> RunReport:
        """Every slot gets the full global budget; the first definitive verdict cancels the rest."""
        started = time.monotonic()
        budget = plan.total_ms
        cancel = threading.Event()
        winner: Optional[RunReport] = None
        reports: Dict[str, RunReport] = {}
        with ThreadPoolExecutor(max_workers=len(plan.slots), thread_name_prefix='ogp-slot') as pool:
            futures = {
                pool.submit(self.prover_service.run, name, conjecture_file, source_format,
                            budget, cancel_event=cancel): name
                for name, _ in plan.slots
            }
            pending = set(futures)
            while pending:
                done, pending = wait(pending, return_when=FIRST_COMPLETED)
                for future in done:
                    report = future.result()
                    reports[futures[future]] = report
                    if winner is None and report.status.definitive:
                        winner = report
                        cancel.set()
        ordered = [reports[name] for name, _ in plan.slots if name in reports]
        return self._aggregate(winner, ordered, started)
