"""
filter*toFOF: conjecture dialects to FOF.
"""
from .core import conjecture_to_fof, constant_names, GOAL_PREDICATES
from .cli import filter_cli, convert_text, FILTER_COMMANDS, DIALECT_FILTERS

__all__ = [
    'conjecture_to_fof', 'constant_names', 'GOAL_PREDICATES',
    'filter_cli', 'convert_text', 'FILTER_COMMANDS', 'DIALECT_FILTERS',
]
