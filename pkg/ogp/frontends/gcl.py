"""
GCL subset (lowercase keywords, one statement per line, ``%`` comments)::

    point A 0 0
    midpoint M A B
    foot F P A B
    intersec X A B C D
    circlecenter O A B C
    prove { parallel P Q S R }
"""
from typing import List

from ..errors import ConjectureSyntaxError, UnsupportedConstructError
from .model import ConjectureBuilder, GeoConjecture, StepKind

STEP_KEYWORDS = {
    'midpoint': StepKind.MIDPOINT,
    'foot': StepKind.FOOT,
    'intersec': StepKind.INTERSECT_LINES,
    'circlecenter': StepKind.CIRCLE_CENTER3,
}


def _tokens(line: str) -> List[str]:
    line = line.split('%', 1)[0]
    return line.replace('{', ' { ').replace('}', ' } ').split()


def _coordinate(token: str, lineno: int) -> float:
    try:
        return float(token)
    except ValueError:
        raise ConjectureSyntaxError(f'expected a number, found {token!r}', lineno) from None


def parse_gcl(text: str, name: str = 'conjecture') -> GeoConjecture:
    """
    Parse GCL source into a GeoConjecture.

    Args:
        text: GCL source
        name: conjecture name

    Returns:
        GeoConjecture, coordinates discarded
    """
    builder = ConjectureBuilder(name)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = _tokens(raw)
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]

        if keyword == 'point':
            if len(args) not in (1, 3):
                raise ConjectureSyntaxError('usage: point <label> [<x> <y>]', lineno)
            for token in args[1:]:
                _coordinate(token, lineno)
            builder.free_point(args[0], lineno)
        elif keyword in STEP_KEYWORDS:
            if not args:
                raise ConjectureSyntaxError(f'{keyword} needs an output label', lineno)
            builder.add_step(STEP_KEYWORDS[keyword], args[0], args[1:], lineno)
        elif keyword == 'prove':
            if len(args) < 2 or args[0] != '{' or args[-1] != '}':
                raise ConjectureSyntaxError('usage: prove { <goal> <points...> }', lineno)
            body = args[1:-1]
            if not body:
                raise ConjectureSyntaxError('empty prove block', lineno)
            if '{' in body or '}' in body:
                raise ConjectureSyntaxError('nested braces in prove block', lineno)
            builder.set_goal(body[0], body[1:], lineno)
        elif keyword in ('{', '}'):
            raise ConjectureSyntaxError(f"unexpected '{keyword}'", lineno)
        else:
            raise UnsupportedConstructError(f'unsupported GCL command {keyword!r}', lineno)
    return builder.build()
