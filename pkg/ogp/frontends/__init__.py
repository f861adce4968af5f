"""
Conjecture frontends: GCL, JGEX and GeoGebra XML into one GeoConjecture model.
"""
from pathlib import Path
from typing import Callable, Dict, Union

from ..errors import FrontendError
from ..utils import format_for_path, stem_for_path
from .model import (
    ConjectureBuilder, ConstructionStep, GeoConjecture, GoalStatement, StepKind, GOAL_ARITIES,
)
from .gcl import parse_gcl
from .jgex import parse_jgex
from .geogebra import parse_ggb_xml

PARSERS: Dict[str, Callable[..., GeoConjecture]] = {
    'gcl': parse_gcl,
    'jgex': parse_jgex,
    'geogebra': parse_ggb_xml,
}


def parse_conjecture(text: str, dialect: str, name: str = 'conjecture') -> GeoConjecture:
    parser = PARSERS.get(dialect)
    if parser is None:
        raise FrontendError(f'no frontend for format {dialect!r}')
    return parser(text, name=name)


def parse_conjecture_file(path: Union[str, Path]) -> GeoConjecture:
    """Parse a conjecture file, choosing the dialect from its extension."""
    dialect = format_for_path(path)
    if dialect not in PARSERS:
        raise FrontendError(f'{path}: not a GCL, JGEX or GeoGebra XML file')
    text = Path(path).read_text(encoding='utf-8')
    return parse_conjecture(text, dialect, name=stem_for_path(path))


__all__ = [
    'ConjectureBuilder', 'ConstructionStep', 'GeoConjecture', 'GoalStatement', 'StepKind',
    'GOAL_ARITIES', 'parse_gcl', 'parse_jgex', 'parse_ggb_xml', 'PARSERS',
    'parse_conjecture', 'parse_conjecture_file',
]
