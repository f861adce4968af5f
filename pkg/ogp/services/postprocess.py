"""
Output post-processors: turn a prover's captured text into a verdict.
"""
import json
import re
from typing import Callable, Dict, NamedTuple, Optional, Tuple

from ..models import ProverStatus

SZS_STATUS_RE = re.compile(r'^%\s*SZS\s+status\s+(\w+)', re.MULTILINE)
SZS_TIME_RE = re.compile(r'^%\s*Time elapsed:\s*([0-9]*\.?[0-9]+)\s*s\b', re.MULTILINE)

SZS_STATUSES = {
    'Theorem': ProverStatus.PROVED,
    'CounterSatisfiable': ProverStatus.DISPROVED,
    'Timeout': ProverStatus.TIMEOUT,
    'GaveUp': ProverStatus.UNKNOWN,
    'Unknown': ProverStatus.UNKNOWN,
    'ResourceOut': ProverStatus.RESOURCE_OUT,
    'MemoryOut': ProverStatus.RESOURCE_OUT,
    'Error': ProverStatus.ERROR,
    'InputError': ProverStatus.ERROR,
    'SyntaxError': ProverStatus.ERROR,
}


class PostResult(NamedTuple):
    status: ProverStatus
    time_ms: Optional[int] = None
    proof_path: Optional[str] = None


def postprocess_szs(raw_output: str) -> Tuple[ProverStatus, Optional[int]]:
    """
    Read an SZS-style log (Vampire and friends).

    Args:
        raw_output: captured prover output

    Returns:
        (status, self-reported time in ms or None); no status line means Unknown
    """
    status = ProverStatus.UNKNOWN
    m = SZS_STATUS_RE.search(raw_output)
    if m:
        status = SZS_STATUSES.get(m.group(1), ProverStatus.UNKNOWN)
    time_ms = None
    t = SZS_TIME_RE.search(raw_output)
    if t:
        time_ms = int(round(float(t.group(1)) * 1000))
    return status, time_ms


def postprocess_ogp(raw_output: str) -> PostResult:
    """Read the native contract: the last JSON object line carrying a status."""
    for line in reversed(raw_output.splitlines()):
        line = line.strip()
        if not line.startswith('{'):
            continue
        try:
            data = json.loads(line)
            status = ProverStatus(data['status'])
        except (ValueError, KeyError, TypeError):
            continue
        time_ms = data.get('time_ms')
        proof_path = data.get('proof_path') if status is ProverStatus.PROVED else None
        return PostResult(status, int(time_ms) if isinstance(time_ms, (int, float)) else None, proof_path)
    return PostResult(ProverStatus.UNKNOWN)


def _szs(raw_output: str) -> PostResult:
    status, time_ms = postprocess_szs(raw_output)
    return PostResult(status, time_ms)


POST_PROCESSORS: Dict[str, Callable[[str], PostResult]] = {
    'szs': _szs,
    'ogp': postprocess_ogp,
}
