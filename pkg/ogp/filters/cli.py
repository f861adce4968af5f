"""
filterGCLtoFOF / filterJGEXtoFOF / filterGEOGEBRAtoFOF.

stdin -> stdout by default; output is written only when the whole
conversion succeeded.
"""
import argparse
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from ..config import Config
from ..errors import OgpError
from ..fof.printer import print_fof
from ..frontends import parse_conjecture
from ..logger import get_logger
from ..utils import stem_for_path
from .core import conjecture_to_fof

logger = get_logger('filters')

FILTER_COMMANDS = {
    'filterGCLtoFOF': 'gcl',
    'filterJGEXtoFOF': 'jgex',
    'filterGEOGEBRAtoFOF': 'geogebra',
}

DIALECT_FILTERS = {dialect: command for command, dialect in FILTER_COMMANDS.items()}


def convert_text(text: str, dialect: str, axiom_include: str, name: str = 'conjecture') -> str:
    """Parse ``text`` in ``dialect`` and return the FOF problem text."""
    conjecture = parse_conjecture(text, dialect, name=name)
    return print_fof(conjecture_to_fof(conjecture, axiom_include))


def build_parser(command: str) -> argparse.ArgumentParser:
    dialect = FILTER_COMMANDS[command]
    parser = argparse.ArgumentParser(prog=command, description=f'Convert a {dialect} conjecture to FOF')
    parser.add_argument('input', nargs='?', help='conjecture file (default: standard input)')
    parser.add_argument('-o', '--output', help='output file (default: standard output)')
    parser.add_argument('--axioms', default=None, help='axiom include path placed in the output')
    return parser


def filter_cli(dialect: str, argv: Optional[List[str]] = None,
               stdin: TextIO = None, stdout: TextIO = None, stderr: TextIO = None) -> int:
    """
    Run one filter command.

    Args:
        dialect: gcl, jgex or geogebra
        argv: arguments after the command name

    Returns:
        exit status (0 success, 1 conversion error, 2 usage error)
    """
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    command = DIALECT_FILTERS[dialect]
    try:
        args = build_parser(command).parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    axiom_include = args.axioms or Config().PROVERS.axiom_include
    try:
        if args.input:
            text = Path(args.input).read_text(encoding='utf-8')
            name = stem_for_path(args.input)
        else:
            text = stdin.read()
            name = 'conjecture'
        output = convert_text(text, dialect, axiom_include, name)
    except (OgpError, OSError) as e:
        where = f'{args.input}: ' if args.input else ''
        print(f'{command}: {where}{e}', file=stderr)
        logger.debug(f"{command} failed", exc_info=True)
        return 1

    if args.output:
        try:
            Path(args.output).write_text(output, encoding='utf-8')
        except OSError as e:
            print(f'{command}: {e}', file=stderr)
            return 1
    else:
        stdout.write(output)
    return 0


def main_gcl(argv: Optional[List[str]] = None) -> int:
    return filter_cli('gcl', argv)


def main_jgex(argv: Optional[List[str]] = None) -> int:
    return filter_cli('jgex', argv)


def main_geogebra(argv: Optional[List[str]] = None) -> int:
    return filter_cli('geogebra', argv)
