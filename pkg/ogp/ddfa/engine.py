"""
Semi-naive forward chaining over canonical facts.

Rounds are numbered from 1. In each round every rule is joined once per
premise position i: premise i ranges over the facts added in the previous
round (the delta), premises before i over older facts, premises after i over
everything known at the start of the round. Facts derived during a round get
their ids immediately but only take part in joins from the next round on, so
the enumeration order depends only on the input order.
"""
from __future__ import annotations

import threading
import time
from bisect import bisect_left
from collections import defaultdict
from dataclasses import dataclass
from typing import (
    Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Tuple, Union,
)

from ..errors import DdfaError
from ..fof.horn import Rule
from ..fof.syntax import Atom, Function, Variable
from ..logger import get_logger
from .facts import Fact, canonicalize, orbit, predicate_spec

logger = get_logger('ddfa.engine')

Substitution = Dict[str, str]

LIMIT_MAX_FACTS = 'max_facts'
LIMIT_MAX_ROUNDS = 'max_rounds'
LIMIT_TIMEOUT = 'timeout'
LIMIT_CANCELLED = 'cancelled'

# join results between two clock/cancel checks
_CHECK_EVERY = 256


@dataclass(frozen=True)
class SaturationLimits:
    max_facts: int = 100000
    max_rounds: int = 1000
    timeout_ms: Optional[int] = None

    def __post_init__(self):
        if self.max_facts <= 0 or self.max_rounds <= 0:
            raise ValueError('saturation limits must be positive')
        if self.timeout_ms is not None and self.timeout_ms <= 0:
            raise ValueError('timeout must be positive')


@dataclass(frozen=True)
class Given:
    name: str


@dataclass(frozen=True)
class Derived:
    rule_id: str
    premises: Tuple[int, ...]


Provenance = Union[Given, Derived]


class ProofNode(NamedTuple):
    id: int
    fact: Fact
    provenance: Provenance


class FactBase:
    """Insertion-ordered set of canonical facts with lookup indexes."""

    def __init__(self):
        self.facts: List[Fact] = []
        self._ids: Dict[Fact, int] = {}
        self._by_predicate: Dict[str, List[int]] = defaultdict(list)
        # keyed by the first argument of every orbit variant
        self._by_first: Dict[Tuple[str, str], List[int]] = defaultdict(list)

    def __len__(self) -> int:
        return len(self.facts)

    def __contains__(self, fact: Fact) -> bool:
        return fact in self._ids

    def __iter__(self) -> Iterator[Fact]:
        return iter(self.facts)

    def id_of(self, fact: Fact) -> Optional[int]:
        return self._ids.get(fact)

    def add(self, fact: Fact) -> Tuple[int, bool]:
        existing = self._ids.get(fact)
        if existing is not None:
            return existing, False
        fact_id = len(self.facts)
        self.facts.append(fact)
        self._ids[fact] = fact_id
        self._by_predicate[fact.predicate].append(fact_id)
        for first in sorted({variant[0] for variant in orbit(fact.predicate, fact.args)}):
            self._by_first[(fact.predicate, first)].append(fact_id)
        return fact_id, True

    def by_predicate(self, predicate: str) -> List[int]:
        return self._by_predicate.get(predicate, [])

    def by_first(self, predicate: str, first: str) -> List[int]:
        return self._by_first.get((predicate, first), [])

    def candidates(self, pattern: Atom, subst: Substitution, lo: int, hi: int) -> List[int]:
        """Fact ids in [lo, hi) that may match ``pattern`` under ``subst``, ascending."""
        first = pattern.args[0] if pattern.args else None
        value = None
        if isinstance(first, Function):
            value = first.symbol
        elif isinstance(first, Variable):
            value = subst.get(first.name)
        ids = self.by_first(pattern.predicate, value) if value is not None \
            else self.by_predicate(pattern.predicate)
        return ids[bisect_left(ids, lo):bisect_left(ids, hi)]


class ProofDag:
    """Provenance of every fact in a FactBase, sharing its ids."""

    def __init__(self):
        self.nodes: List[ProofNode] = []

    def __len__(self) -> int:
        return len(self.nodes)

    def add(self, fact: Fact, provenance: Provenance) -> None:
        self.nodes.append(ProofNode(len(self.nodes), fact, provenance))

    def edges(self) -> Iterator[Tuple[int, int]]:
        for node in self.nodes:
            if isinstance(node.provenance, Derived):
                for premise in node.provenance.premises:
                    yield premise, node.id

    def ancestors(self, node_id: int) -> List[int]:
        """``node_id`` and everything it depends on, in id order."""
        seen = set()
        stack = [node_id]
        while stack:
            current = stack.pop()
            if current in seen:
                continue
            seen.add(current)
            provenance = self.nodes[current].provenance
            if isinstance(provenance, Derived):
                stack.extend(provenance.premises)
        return sorted(seen)


@dataclass
class SaturationStats:
    rounds: int = 0
    derived: int = 0
    elapsed_ms: int = 0
    limit: Optional[str] = None
    fixpoint: bool = False
    goal_round: Optional[int] = None


class SaturationResult(NamedTuple):
    base: FactBase
    dag: ProofDag
    stats: SaturationStats


class _LimitReached(Exception):
    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class _GoalReached(Exception):
    pass


def match_atom(pattern: Atom, fact: Fact, subst: Substitution) -> Iterator[Substitution]:
    """Extensions of ``subst`` matching ``pattern`` against any orbit variant of ``fact``."""
    if pattern.predicate != fact.predicate or len(pattern.args) != len(fact.args):
        return
    produced = set()
    for variant in orbit(fact.predicate, fact.args):
        extended = dict(subst)
        for term, value in zip(pattern.args, variant):
            if isinstance(term, Variable):
                bound = extended.get(term.name)
                if bound is None:
                    extended[term.name] = value
                elif bound != value:
                    break
            elif term.symbol != value:
                break
        else:
            key = tuple(sorted(extended.items()))
            if key not in produced:
                produced.add(key)
                yield extended


def ground_term(term, subst: Substitution) -> str:
    if isinstance(term, Variable):
        return subst[term.name]
    return term.symbol


def guards_hold(rule: Rule, subst: Substitution) -> bool:
    return all(ground_term(a, subst) != ground_term(b, subst) for a, b in rule.guards)


def instantiate(atom: Atom, subst: Substitution) -> Fact:
    return canonicalize(atom.predicate, [ground_term(t, subst) for t in atom.args])


def check_rules(rules: Iterable[Rule]) -> None:
    """Every rule atom must agree with the predicate table."""
    for rule in rules:
        for atom in rule.premises + (rule.conclusion,):
            try:
                predicate_spec(atom.predicate, atom.arity)
            except DdfaError as e:
                raise DdfaError(f'rule {rule.id}: {e}') from e


class _Saturator:
    def __init__(self, rules: Sequence[Rule], limits: SaturationLimits,
                 goal: Optional[Fact], cancel_event: Optional[threading.Event]):
        self.rules = list(rules)
        self.limits = limits
        self.goal = goal
        self.cancel_event = cancel_event
        self.base = FactBase()
        self.dag = ProofDag()
        self.stats = SaturationStats()
        self._started = time.monotonic()
        self._deadline = (self._started + limits.timeout_ms / 1000.0
                          if limits.timeout_ms is not None else None)
        self._ticks = 0

    def check_budget(self) -> None:
        if self.cancel_event is not None and self.cancel_event.is_set():
            raise _LimitReached(LIMIT_CANCELLED)
        if self._deadline is not None and time.monotonic() >= self._deadline:
            raise _LimitReached(LIMIT_TIMEOUT)

    def _tick(self) -> None:
        self._ticks += 1
        if self._ticks % _CHECK_EVERY == 0:
            self.check_budget()

    def load(self, facts: Sequence[Fact], sources: Sequence[str]) -> None:
        for fact, source in zip(facts, sources):
            if not fact.canonical:
                fact = canonicalize(fact.predicate, fact.args)
            _, is_new = self.base.add(fact)
            if is_new:
                self.dag.add(fact, Given(source))

    def _join(self, rule: Rule, k: int, subst: Substitution, premise_ids: Tuple[int, ...],
              ranges: Sequence[Tuple[int, int]]) -> Iterator[Tuple[Substitution, Tuple[int, ...]]]:
        if k == len(rule.premises):
            yield subst, premise_ids
            return
        pattern = rule.premises[k]
        lo, hi = ranges[k]
        for fact_id in self.base.candidates(pattern, subst, lo, hi):
            self._tick()
            for extended in match_atom(pattern, self.base.facts[fact_id], subst):
                yield from self._join(rule, k + 1, extended, premise_ids + (fact_id,), ranges)

    def _derive(self, rule: Rule, subst: Substitution, premise_ids: Tuple[int, ...]) -> None:
        if not guards_hold(rule, subst):
            return
        fact = instantiate(rule.conclusion, subst)
        if fact in self.base:
            return
        if len(self.base) >= self.limits.max_facts:
            raise _LimitReached(LIMIT_MAX_FACTS)
        self.base.add(fact)
        self.dag.add(fact, Derived(rule.id, premise_ids))
        self.stats.derived += 1
        if self.goal is not None and fact == self.goal:
            raise _GoalReached()

    def run(self) -> None:
        delta_start, delta_end = 0, len(self.base)
        if self.goal is not None and self.goal in self.base:
            self.stats.goal_round = 0
            return
        try:
            while self.rules and delta_start < delta_end:
                if self.stats.rounds >= self.limits.max_rounds:
                    raise _LimitReached(LIMIT_MAX_ROUNDS)
                self.check_budget()
                self.stats.rounds += 1
                for rule in self.rules:
                    n = len(rule.premises)
                    for i in range(n):
                        ranges = [(0, delta_start)] * i + [(delta_start, delta_end)] \
                            + [(0, delta_end)] * (n - i - 1)
                        for subst, premise_ids in self._join(rule, 0, {}, (), ranges):
                            self._derive(rule, subst, premise_ids)
                logger.debug(f"round {self.stats.rounds}: {len(self.base) - delta_end} new facts")
                delta_start, delta_end = delta_end, len(self.base)
            self.stats.fixpoint = True
        except _LimitReached as reached:
            self.stats.limit = reached.reason
        except _GoalReached:
            self.stats.goal_round = self.stats.rounds


def saturate(facts: Sequence[Fact], rules: Sequence[Rule], limits: Optional[SaturationLimits] = None,
             *, sources: Optional[Sequence[str]] = None, goal: Optional[Fact] = None,
             cancel_event: Optional[threading.Event] = None) -> SaturationResult:
    """
    Close ``facts`` under ``rules``.

    Args:
        facts: initial facts, canonicalized on load
        rules: range-restricted rules, applied in the given order
        limits: max_facts / max_rounds / timeout; defaults when None
        sources: hypothesis name per fact, defaults to h1, h2, ...
        goal: stop as soon as this fact is derived
        cancel_event: stop when set

    Returns:
        SaturationResult(base, dag, stats); a limit that fires is reported
        in ``stats.limit``, never raised
    """
    limits = limits or SaturationLimits()
    check_rules(rules)
    if sources is None:
        sources = [f'h{i}' for i in range(1, len(facts) + 1)]
    if len(sources) != len(facts):
        raise DdfaError('one source name per initial fact is required')

    saturator = _Saturator(rules, limits, goal, cancel_event)
    saturator.load(facts, sources)
    saturator.run()
    saturator.stats.elapsed_ms = int((time.monotonic() - saturator._started) * 1000)
    stats = saturator.stats
    logger.debug(f"saturation: {stats.rounds} rounds, {stats.derived} derived, "
                 f"limit={stats.limit}, fixpoint={stats.fixpoint}")
    return SaturationResult(saturator.base, saturator.dag, stats)
