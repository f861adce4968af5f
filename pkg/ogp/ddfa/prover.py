"""
Native deductive-database prover.
"""
import os
import tempfile
import threading
import time
from pathlib import Path
from typing import Optional, Sequence

from ..config import PACKAGE_ROOT
from ..errors import OgpError
from ..fof.horn import to_horn_rules
from ..fof.includes import resolve_includes
from ..fof.syntax import FofDocument
from ..logger import get_logger
from ..models import ProverStatus, RunReport
from .engine import (
    LIMIT_CANCELLED, LIMIT_MAX_FACTS, LIMIT_MAX_ROUNDS, LIMIT_TIMEOUT,
    SaturationLimits, check_rules, saturate,
)
from .facts import fact_from_atom
from .proof import extract_proof, serialize_proof

logger = get_logger('ddfa')

PROVER_NAME = 'ddfa'


def _elapsed_ms(started: float) -> int:
    return int((time.monotonic() - started) * 1000)


def _write_proof(text: str, proof_path: Optional[str]) -> str:
    if proof_path is None:
        fd, proof_path = tempfile.mkstemp(prefix='ogp-', suffix='.proof')
        with os.fdopen(fd, 'w', encoding='utf-8') as f:
            f.write(text)
    else:
        Path(proof_path).write_text(text, encoding='utf-8')
    return str(proof_path)


def prove(doc: FofDocument, limits: Optional[SaturationLimits] = None, *,
          proof_path: Optional[str] = None,
          cancel_event: Optional[threading.Event] = None,
          search_paths: Sequence[str] = (str(PACKAGE_ROOT),),
          base_dir: Optional[str] = None) -> RunReport:
    """
    Saturate the document's hypotheses under its rules and look for the goal.

    Args:
        doc: problem; includes are resolved against ``search_paths`` first
        limits: saturation limits (timeout included)
        proof_path: where to write the proof; a temporary file when None
        cancel_event: set to stop early (reported as Timeout, "cancelled")

    Returns:
        RunReport; problems outside the Horn fragment come back as Error
    """
    started = time.monotonic()
    limits = limits or SaturationLimits()

    def report(status: ProverStatus, detail: Optional[str] = None, raw: str = '',
               path: Optional[str] = None) -> RunReport:
        return RunReport(prover=PROVER_NAME, status=status, time_ms=_elapsed_ms(started),
                         proof_path=path, raw_output=raw, detail=detail)

    try:
        if doc.includes:
            doc = resolve_includes(doc, list(search_paths), base_dir)
        problem = to_horn_rules(doc)
        facts = [fact_from_atom(given.atom) for given in problem.facts]
        goal = fact_from_atom(problem.goal)
        check_rules(problem.rules)
    except OgpError as e:
        logger.info(f"ddfa: problem rejected: {e}")
        return report(ProverStatus.ERROR, str(e))

    base, dag, stats = saturate(facts, problem.rules, limits,
                                sources=[given.name for given in problem.facts],
                                goal=goal, cancel_event=cancel_event)

    if goal in base:
        steps = extract_proof(base, dag, goal)
        text = serialize_proof(steps)
        derived = sum(1 for step in steps if step.given is None)
        try:
            path = _write_proof(text, proof_path)
        except OSError as e:
            return report(ProverStatus.ERROR, f'cannot write proof: {e}', raw=text)
        logger.info(f"ddfa: Proved in {stats.rounds} rounds ({derived} derived steps)")
        return report(ProverStatus.PROVED, f'{derived} derived steps, {stats.rounds} rounds',
                      raw=text, path=path)

    if stats.limit == LIMIT_TIMEOUT:
        return report(ProverStatus.TIMEOUT, f'timeout after {stats.rounds} rounds')
    if stats.limit == LIMIT_CANCELLED:
        return report(ProverStatus.TIMEOUT, 'cancelled')
    if stats.limit in (LIMIT_MAX_FACTS, LIMIT_MAX_ROUNDS):
        return report(ProverStatus.RESOURCE_OUT,
                      f'{stats.limit} limit reached ({len(base)} facts, {stats.rounds} rounds)')
    return report(ProverStatus.UNKNOWN,
                  f'fixpoint after {stats.rounds} rounds with {len(base)} facts; '
                  f'goal not derived (this is not a refutation)')
