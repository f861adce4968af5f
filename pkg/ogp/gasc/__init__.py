"""
Competition harness.
"""
from .harness import (
    CompetitionConfig, Problem, ResultMatrix, ScoreRow, ScoreTable,
    emit, load_competition_config, resolve_problems, run_competition, score,
)

__all__ = [
    'CompetitionConfig', 'Problem', 'ResultMatrix', 'ScoreRow', 'ScoreTable',
    'emit', 'load_competition_config', 'resolve_problems', 'run_competition', 'score',
]
