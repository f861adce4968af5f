"""
Native prover command: ``ddfa <input-file> [--timeout <s>] [--proof <path>]``.

Prints one JSON object ``{status, time_ms, proof_path?}`` on stdout; human
text goes to stderr.
"""
import argparse
import json
import sys
import time
from typing import List, Optional

from ..config import Config
from ..errors import OgpError
from ..fof.includes import load_fof
from ..logger import get_logger
from ..models import ProverStatus, RunReport
from .engine import SaturationLimits
from .prover import PROVER_NAME, prove

logger = get_logger('ddfa.cli')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ddfa', description='Deductive-database prover for FOF geometry problems')
    parser.add_argument('input', help='FOF problem file')
    parser.add_argument('--timeout', type=float, default=None, help='wall-clock limit in seconds')
    parser.add_argument('--proof', default=None, help='write the proof to this path')
    parser.add_argument('--max-facts', type=int, default=SaturationLimits.max_facts)
    parser.add_argument('--max-rounds', type=int, default=SaturationLimits.max_rounds)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    started = time.monotonic()
    config = Config().PROVERS

    try:
        timeout_ms = int(args.timeout * 1000) if args.timeout is not None else config.default_timeout_ms
        limits = SaturationLimits(max_facts=args.max_facts, max_rounds=args.max_rounds, timeout_ms=timeout_ms)
        doc = load_fof(args.input, config.axiom_search_paths)
        report = prove(doc, limits, proof_path=args.proof)
    except (OgpError, OSError, ValueError) as e:
        report = RunReport(prover=PROVER_NAME, status=ProverStatus.ERROR,
                           time_ms=int((time.monotonic() - started) * 1000), detail=str(e))

    print(f"{PROVER_NAME}: {report.status.value} ({report.time_ms} ms)"
          + (f" - {report.detail}" if report.detail else ''), file=sys.stderr)
    print(json.dumps(report.contract_dict()))
    return 0 if report.status is not ProverStatus.ERROR else 1


if __name__ == '__main__':
    sys.exit(main())
