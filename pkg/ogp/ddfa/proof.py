"""
Proof traces: extraction from the provenance DAG, text serialization and an
independent step-by-step checker.

One step per line::

    1. midp(p,a,b)  [Given h1]
    5. para(a,c,p,q)  [d3: 1, 2]
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import DdfaError, OgpError
from ..fof.horn import Rule, to_horn_rules
from ..fof.syntax import FofDocument
from .engine import Derived, FactBase, Given, ProofDag, Substitution, guards_hold, instantiate, match_atom
from .facts import Fact, canonicalize, fact_from_atom

_STEP_RE = re.compile(
    r'^(?P<number>\d+)\.\s+(?P<predicate>[a-z][A-Za-z0-9_]*)\((?P<args>[^()]*)\)\s+'
    r'\[(?:Given\s+(?P<given>[a-z][A-Za-z0-9_]*)|(?P<rule>[a-z][A-Za-z0-9_]*):\s*(?P<premises>[0-9,\s]*))\]\s*$'
)


@dataclass(frozen=True)
class ProofStep:
    number: int
    fact: Fact
    given: Optional[str] = None
    rule_id: Optional[str] = None
    premises: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if self.given is not None:
            justification = f'Given {self.given}'
        else:
            justification = f"{self.rule_id}: {', '.join(str(p) for p in self.premises)}"
        return f'{self.number}. {self.fact}  [{justification}]'


@dataclass(frozen=True)
class ReplayResult:
    ok: bool
    failed_step: Optional[int] = None
    message: str = ''

    def __bool__(self) -> bool:
        return self.ok


def extract_proof(base: FactBase, dag: ProofDag, goal: Fact) -> List[ProofStep]:
    """Slice the DAG to the goal's ancestors and renumber from 1."""
    goal_id = base.id_of(goal)
    if goal_id is None:
        raise DdfaError(f'{goal} was not derived')
    node_ids = dag.ancestors(goal_id)
    numbering = {node_id: n for n, node_id in enumerate(node_ids, start=1)}
    steps = []
    for node_id in node_ids:
        node = dag.nodes[node_id]
        if isinstance(node.provenance, Given):
            steps.append(ProofStep(numbering[node_id], node.fact, given=node.provenance.name))
        else:
            steps.append(ProofStep(numbering[node_id], node.fact, rule_id=node.provenance.rule_id,
                                   premises=tuple(numbering[p] for p in node.provenance.premises)))
    return steps


def serialize_proof(steps: Sequence[ProofStep]) -> str:
    return ''.join(f'{step}\n' for step in steps)


def parse_proof(text: str) -> List[ProofStep]:
    steps = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        m = _STEP_RE.match(line.strip())
        if m is None:
            raise DdfaError(f'line {lineno}: malformed proof step: {line.strip()}')
        args = tuple(a.strip() for a in m.group('args').split(',')) if m.group('args').strip() else ()
        fact = Fact(m.group('predicate'), args)
        number = int(m.group('number'))
        if m.group('given'):
            steps.append(ProofStep(number, fact, given=m.group('given')))
        else:
            premises = tuple(int(p) for p in re.split(r'[,\s]+', m.group('premises').strip()) if p)
            steps.append(ProofStep(number, fact, rule_id=m.group('rule'), premises=premises))
    return steps


def _instances(rule: Rule, premise_facts: Sequence[Fact], k: int,
               subst: Substitution) -> Iterator[Substitution]:
    if k == len(rule.premises):
        yield subst
        return
    for extended in match_atom(rule.premises[k], premise_facts[k], subst):
        yield from _instances(rule, premise_facts, k + 1, extended)


def _check_derived(step: ProofStep, fact: Fact, rule: Rule, premise_facts: Sequence[Fact]) -> bool:
    for subst in _instances(rule, premise_facts, 0, {}):
        if guards_hold(rule, subst) and instantiate(rule.conclusion, subst) == fact:
            return True
    return False


def replay(proof_text: str, doc: FofDocument) -> ReplayResult:
    """
    Check a serialized proof against the problem it claims to solve.

    Args:
        proof_text: text produced by serialize_proof
        doc: flattened problem (hypotheses, rules, conjecture)

    Returns:
        ReplayResult; ``failed_step`` names the first bad step
    """
    try:
        problem = to_horn_rules(doc)
        givens = {fact.name: fact_from_atom(fact.atom) for fact in problem.facts}
        goal = fact_from_atom(problem.goal)
    except OgpError as e:
        return ReplayResult(False, None, f'problem not checkable: {e}')
    rules = {rule.id: rule for rule in problem.rules}

    try:
        steps = parse_proof(proof_text)
    except DdfaError as e:
        return ReplayResult(False, None, str(e))

    if not steps:
        if goal in givens.values():
            return ReplayResult(True, None, 'goal is a hypothesis')
        return ReplayResult(False, None, 'empty proof and the goal is not a hypothesis')

    known: Dict[int, Fact] = {}
    for step in steps:
        def fail(message: str) -> ReplayResult:
            return ReplayResult(False, step.number, f'step {step.number}: {message}')

        if step.number in known:
            return fail('duplicate step number')
        try:
            fact = canonicalize(step.fact.predicate, step.fact.args)
        except DdfaError as e:
            return fail(str(e))

        if step.given is not None:
            if step.given not in givens:
                return fail(f'no hypothesis named {step.given}')
            if givens[step.given] != fact:
                return fail(f'{step.fact} is not hypothesis {step.given}')
        else:
            rule = rules.get(step.rule_id)
            if rule is None:
                return fail(f'unknown rule {step.rule_id}')
            missing = [p for p in step.premises if p not in known]
            if missing:
                return fail(f"premise {', '.join(map(str, missing))} does not precede this step")
            if len(step.premises) != len(rule.premises):
                return fail(f'{rule.id} takes {len(rule.premises)} premises, got {len(step.premises)}')
            if not _check_derived(step, fact, rule, [known[p] for p in step.premises]):
                return fail(f'{step.fact} is not an instance of {rule.id} from the cited premises')
        known[step.number] = fact

    last = steps[-1]
    if known[last.number] != goal:
        return ReplayResult(False, last.number, f'step {last.number}: last step does not conclude {goal}')
    return ReplayResult(True, None, f'{len(steps)} steps checked')
