"""
The ``ogp`` command.
"""
import sys
from pathlib import Path
from typing import List, Optional, TextIO, Tuple, Union

from .. import __version__
from ..config import Config
from ..errors import ChoiceError, OgpError, UsageError
from ..filters.cli import DIALECT_FILTERS, convert_text
from ..fof.parser import parse_fof
from ..fof.syntax import FofDocument
from ..logger import get_logger
from ..models import REPOSITORY_FORMATS, ProverStatus, RunReport
from ..repository.client import client_get
from ..services.manager import ServiceManager
from ..services.portfolio_service import PORTFOLIO_NAME
from ..services.registry import Registry, load_registry
from ..utils import FORMAT_EXTENSIONS, file_extension, format_for_path, remove_quietly, write_temp_file
from .dispatch import FileSource, Help, ListProvers, Prove, TgtpSource, Version, dispatch

logger = get_logger('cli')

EXIT_CODES = {
    ProverStatus.PROVED: 0,
    ProverStatus.DISPROVED: 1,
    ProverStatus.UNKNOWN: 2,
    ProverStatus.TIMEOUT: 3,
    ProverStatus.RESOURCE_OUT: 3,
    ProverStatus.ERROR: 4,
}
EXIT_ERROR = 4

PORTFOLIO_EXTENSIONS = ('.fof', '.p')

HELP_TEXT = """\
ogp - Open Geometry Prover

usage:
    ogp [<option>] [<conjecture> [<prover> [<prover-options>]]]

options:
    -h, --help            show this help and exit (alone)
    -p, --provers         list the available provers and exit (alone)
    -V, --version         show the version and exit (alone)
    -t <s>, --timeout=<s> time limit in seconds (default {timeout} s)
    --tgtp=<id>           fetch the conjecture from the repository
    --parallel            run portfolio slots concurrently
    --json                print the report as JSON

prover choice:
    an explicit prover wins; otherwise .fof files and repository problems go
    to the portfolio and other files to their extension's default prover

exit status:
    0 Proved, 1 Disproved, 2 Unknown, 3 Timeout/ResourceOut, 4 error
"""


class Portfolio:
    """Marker returned by choose_prover."""

    def __repr__(self) -> str:
        return PORTFOLIO_NAME

    def __eq__(self, other) -> bool:
        return isinstance(other, Portfolio)

    def __hash__(self) -> int:
        return hash(PORTFOLIO_NAME)


PORTFOLIO = Portfolio()


def choose_prover(action: Prove, registry: Registry) -> Union[str, Portfolio]:
    """
    Decide who proves the conjecture.

    Returns:
        prover name, or PORTFOLIO

    Raises:
        ChoiceError: unregistered prover, or an extension without a default
    """
    if action.prover is not None:
        if action.prover in registry:
            return action.prover
        if action.prover == PORTFOLIO_NAME:
            return PORTFOLIO
        raise ChoiceError(f"prover {action.prover!r} is not registered "
                          f"(available: {', '.join(registry.names())})")
    if isinstance(action.source, TgtpSource):
        return PORTFOLIO
    extension = file_extension(action.source.path)
    if extension in PORTFOLIO_EXTENSIONS:
        return PORTFOLIO
    default = registry.default_for(extension)
    if default is None:
        raise ChoiceError(f"no default prover for '{extension or action.source.path}' files; "
                          f"name a prover explicitly")
    return default


def provers_table(registry: Registry) -> str:
    rows = [('name', 'kind', 'formats', 'default for')]
    for spec in registry:
        rows.append((spec.name, spec.kind.value, ','.join(spec.accepted_formats),
                     ' '.join(spec.default_for_extensions) or '-'))
    rows.append((PORTFOLIO_NAME, 'builtin', 'fof', ' '.join(PORTFOLIO_EXTENSIONS)))
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    lines = ['  '.join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows]
    return '\n'.join(lines) + '\n'


def format_report(report: RunReport) -> str:
    lines = [f'prover:  {report.prover}', f'status:  {report.status.value}', f'time:    {report.time_ms} ms']
    if report.proof_path:
        lines.append(f'proof:   {report.proof_path}')
    if report.detail:
        lines.append(f'detail:  {report.detail}')
    return '\n'.join(lines) + '\n'


def _requested_format(action: Prove, registry: Registry) -> str:
    """Repository format to ask for: the named prover's first stored-format choice, else fof."""
    if action.prover and action.prover in registry:
        for fmt in registry.get(action.prover).accepted_formats:
            if fmt in REPOSITORY_FORMATS:
                return fmt
    return 'fof'


def acquire(action: Prove, registry: Registry, config: Config) -> Tuple[str, str, Optional[str]]:
    """
    Locate the conjecture.

    Returns:
        (path, source format, temporary file to remove afterwards or None)
    """
    if isinstance(action.source, FileSource):
        path = action.source.path
        if not Path(path).is_file():
            raise UsageError(f'cannot read conjecture file {path}')
        fmt = format_for_path(path)
        if fmt is None:
            raise ChoiceError(f'unknown conjecture format for {path}')
        return path, fmt, None

    repository = config.REPOSITORY
    requested = _requested_format(action, registry)
    fmt, content = client_get(repository.endpoint, action.source.problem_id, requested,
                              repository.client_timeout)
    temp = write_temp_file(content, FORMAT_EXTENSIONS[fmt], config.PROVERS.temp_prefix)
    logger.info(f"Fetched {action.source.problem_id} as {fmt} from {repository.endpoint}")
    return temp, fmt, temp


def portfolio_document(path: str, fmt: str, axiom_include: str) -> FofDocument:
    """FOF view of the conjecture for feature extraction."""
    text = Path(path).read_text(encoding='utf-8')
    if fmt == 'fof':
        return parse_fof(text, source=path)
    if fmt in DIALECT_FILTERS:
        return parse_fof(convert_text(text, fmt, axiom_include))
    raise ChoiceError(f'the portfolio needs fof input; no filter converts {fmt}')


def run_prove(action: Prove, manager: ServiceManager, config: Config) -> RunReport:
    registry = manager.registry
    choice = choose_prover(action, registry)
    path, fmt, temp = acquire(action, registry, config)
    try:
        if choice == PORTFOLIO:
            if action.prover_options:
                raise UsageError('prover options need an explicitly named prover')
            doc = portfolio_document(path, fmt, config.PROVERS.axiom_include)
            plan = manager.portfolio.plan(doc, action.timeout_ms)
            return manager.portfolio.execute(plan, path, fmt, parallel=action.parallel)
        return manager.prover.run(choice, path, fmt, action.timeout_ms, action.prover_options)
    finally:
        remove_quietly(temp)


def main(argv: Optional[List[str]] = None, stdout: Optional[TextIO] = None,
         stderr: Optional[TextIO] = None, manager: Optional[ServiceManager] = None) -> int:
    """
    Entry point of the ``ogp`` command.

    Args:
        argv: arguments after the program name (sys.argv[1:] when None)
        manager: pre-built services (tests); built from the configuration otherwise

    Returns:
        exit status (0 Proved, 1 Disproved, 2 Unknown, 3 Timeout/ResourceOut, 4 error)
    """
    argv = sys.argv[1:] if argv is None else argv
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    config = manager.config if manager is not None else Config()

    try:
        action = dispatch(argv, config.DEFAULT_TIMEOUT_MS)
        if isinstance(action, Help):
            stdout.write(HELP_TEXT.format(timeout=config.DEFAULT_TIMEOUT_MS // 1000))
            return 0
        if isinstance(action, Version):
            stdout.write(f'ogp {__version__}\n')
            return 0
        if isinstance(action, ListProvers):
            registry = manager.registry if manager is not None else load_registry(config.PROVERS.registry_path)
            stdout.write(provers_table(registry))
            return 0

        manager = manager or ServiceManager(config).init_services()
        report = run_prove(action, manager, config)
    except OgpError as e:
        print(f'ogp: {e}', file=stderr)
        if isinstance(e, UsageError):
            print('usage: ogp [<option>] [<conjecture> [<prover> [<prover-options>]]] (ogp -h for help)',
                  file=stderr)
        return EXIT_ERROR

    stdout.write(report.to_json() + '\n' if action.json else format_report(report))
    if report.status is ProverStatus.ERROR and report.detail:
        print(f'ogp: {report.prover}: {report.detail}', file=stderr)
    return EXIT_CODES[report.status]
