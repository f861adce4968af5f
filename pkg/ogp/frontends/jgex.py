"""
JGEX subset (uppercase keywords, ``#`` comments)::

    POINT A B C D
    MIDPOINT P A B
    FOOT F P A B
    INTERSECTION X A B C D
    CIRCUMCENTER O A B C
    SHOW PARA P Q S R
"""
from ..errors import ConjectureSyntaxError, MissingGoalError, UnsupportedConstructError
from .model import ConjectureBuilder, GeoConjecture, StepKind

STEP_KEYWORDS = {
    'MIDPOINT': StepKind.MIDPOINT,
    'FOOT': StepKind.FOOT,
    'INTERSECTION': StepKind.INTERSECT_LINES,
    'CIRCUMCENTER': StepKind.CIRCLE_CENTER3,
}

GOAL_WORDS = {
    'COLL': 'collinear',
    'PARA': 'parallel',
    'PERP': 'perpendicular',
    'CONG': 'congruent',
    'MIDP': 'midpoint',
    'EQANGLE': 'eqangle',
    'CYCLIC': 'cyclic',
}


def parse_jgex(text: str, name: str = 'conjecture') -> GeoConjecture:
    builder = ConjectureBuilder(name)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split('#', 1)[0].split()
        if not tokens:
            continue
        keyword, args = tokens[0], tokens[1:]

        if keyword == 'POINT':
            if not args:
                raise ConjectureSyntaxError('POINT needs at least one label', lineno)
            for label in args:
                builder.free_point(label, lineno)
        elif keyword in STEP_KEYWORDS:
            if not args:
                raise ConjectureSyntaxError(f'{keyword} needs an output label', lineno)
            builder.add_step(STEP_KEYWORDS[keyword], args[0], args[1:], lineno)
        elif keyword == 'SHOW':
            if not args:
                raise MissingGoalError('empty SHOW clause', lineno)
            predicate = GOAL_WORDS.get(args[0])
            if predicate is None:
                raise UnsupportedConstructError(f'unsupported SHOW predicate {args[0]!r}', lineno)
            builder.set_goal(predicate, args[1:], lineno)
        else:
            raise UnsupportedConstructError(f'unsupported JGEX command {keyword!r}', lineno)
    return builder.build()
