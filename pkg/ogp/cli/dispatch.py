"""
Argument dispatch for ``ogp [<option>] [<conjecture> [<prover> [<prover-options>]]]``.

Options come before the conjecture. After the conjecture, the first token
starting with ``-`` and everything after it are prover options, passed on
verbatim.
"""
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

from ..config import DEFAULT_TIMEOUT_SECONDS
from ..errors import UsageError
from ..models import IDENTIFIER_RE

STANDALONE = {
    '-h': 'help', '--help': 'help',
    '-p': 'provers', '--provers': 'provers',
    '-V': 'version', '--version': 'version',
}


@dataclass(frozen=True)
class FileSource:
    path: str


@dataclass(frozen=True)
class TgtpSource:
    problem_id: str


Source = Union[FileSource, TgtpSource]


@dataclass(frozen=True)
class Help:
    pass


@dataclass(frozen=True)
class ListProvers:
    pass


@dataclass(frozen=True)
class Version:
    pass


@dataclass(frozen=True)
class Prove:
    source: Source
    prover: Optional[str] = None
    prover_options: Tuple[str, ...] = ()
    timeout_ms: int = DEFAULT_TIMEOUT_SECONDS * 1000
    parallel: bool = False
    json: bool = False


Action = Union[Help, ListProvers, Version, Prove]


def _parse_timeout(value: str) -> int:
    try:
        seconds = float(value)
    except ValueError:
        raise UsageError(f'timeout must be a number of seconds, got {value!r}') from None
    if not seconds > 0 or seconds == float('inf'):
        raise UsageError(f'timeout must be positive, got {value!r}')
    return max(1, int(round(seconds * 1000)))


def dispatch(argv: Sequence[str], default_timeout_ms: int = DEFAULT_TIMEOUT_SECONDS * 1000) -> Action:
    """
    Turn the argument vector into an Action.

    Args:
        argv: arguments after the program name
        default_timeout_ms: used when -t is absent

    Returns:
        Help, ListProvers, Version or Prove

    Raises:
        UsageError: unknown flag, bad timeout, -h/-p/-V combined with anything,
            both a file and --tgtp
    """
    argv = list(argv)
    if not argv:
        raise UsageError('no conjecture given (try ogp -h)')

    standalone = [a for a in argv if a in STANDALONE]
    if standalone:
        if len(argv) != 1:
            raise UsageError(f'{standalone[0]} must be used alone')
        kind = STANDALONE[argv[0]]
        return Help() if kind == 'help' else ListProvers() if kind == 'provers' else Version()

    timeout_ms = default_timeout_ms
    tgtp: Optional[str] = None
    parallel = False
    as_json = False
    i = 0
    while i < len(argv) and argv[i].startswith('-'):
        arg = argv[i]
        if arg in ('-t', '--timeout'):
            if i + 1 >= len(argv):
                raise UsageError(f'{arg} needs a value in seconds')
            timeout_ms = _parse_timeout(argv[i + 1])
            i += 2
            continue
        if arg.startswith('--timeout='):
            timeout_ms = _parse_timeout(arg.split('=', 1)[1])
        elif arg.startswith('--tgtp='):
            tgtp = arg.split('=', 1)[1]
            if not tgtp:
                raise UsageError('--tgtp needs a problem id')
        elif arg == '--parallel':
            parallel = True
        elif arg == '--json':
            as_json = True
        else:
            raise UsageError(f'unknown option {arg}')
        i += 1

    rest = argv[i:]
    if tgtp is not None:
        source: Source = TgtpSource(tgtp)
    else:
        if not rest:
            raise UsageError('no conjecture given')
        source = FileSource(rest.pop(0))

    prover = None
    if rest and not rest[0].startswith('-'):
        prover = rest.pop(0)
        if tgtp is not None and not IDENTIFIER_RE.match(prover):
            raise UsageError(f'both --tgtp and a conjecture file ({prover}) given')
    options: List[str] = rest
    return Prove(source, prover, tuple(options), timeout_ms, parallel, as_json)
