"""
``ogp-gasc <config.json> [--jobs N] [--format csv|markdown]``
"""
import argparse
import sys
from typing import List, Optional

from ..config import Config
from ..errors import OgpError
from ..logger import get_logger
from ..services.manager import ServiceManager
from .harness import emit, load_competition_config, run_competition, score

logger = get_logger('gasc.cli')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='ogp-gasc', description='Run a geometry prover competition')
    parser.add_argument('config', help='competition config (JSON)')
    parser.add_argument('--jobs', type=int, default=None,
                        help='concurrent cells (default: config file, then OGP_GASC_JOBS); '
                             'more than 1 makes times less comparable')
    parser.add_argument('--format', choices=('csv', 'markdown'), default=None, help='score table format')
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        competition = load_competition_config(args.config)
        updates = {}
        if args.jobs is not None:
            if args.jobs < 1:
                raise OgpError('--jobs must be at least 1')
            updates['jobs'] = args.jobs
        elif 'jobs' not in competition.model_fields_set:
            updates['jobs'] = Config().GASC.jobs
        if args.format is not None:
            updates['format'] = args.format
        competition = competition.model_copy(update=updates)

        manager = ServiceManager().init_services()
        matrix = run_competition(competition, manager.registry, manager.prover,
                                 manager.config.REPOSITORY.endpoint)
        table = score(matrix)
        emit(table, matrix, competition.output_dir, competition.format)
    except OgpError as e:
        print(f'ogp-gasc: {e}', file=sys.stderr)
        return 1

    for row in table:
        print(f'{row.rank:>3}  {row.prover:<20} {row.solved:>4} solved  {row.time_ms:>8} ms')
    return 0


if __name__ == '__main__':
    sys.exit(main())
