"""
The ``ogp`` command line.
"""
from .dispatch import (
    Action, FileSource, Help, ListProvers, Prove, Source, TgtpSource, Version, dispatch,
)
from .main import EXIT_CODES, PORTFOLIO, choose_prover, main, provers_table

__all__ = [
    'Action', 'FileSource', 'Help', 'ListProvers', 'Prove', 'Source', 'TgtpSource', 'Version',
    'dispatch', 'EXIT_CODES', 'PORTFOLIO', 'choose_prover', 'main', 'provers_table',
]
