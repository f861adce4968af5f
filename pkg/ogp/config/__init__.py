"""
Configuration management for the Open Geometry Prover tools.
"""
from .config import (
    Config,
    LogConfig,
    ProverConfig,
    RepositoryConfig,
    GascConfig,
    PACKAGE_ROOT,
    DEFAULT_AXIOMS,
    DEFAULT_PORT,
    DEFAULT_TIMEOUT_SECONDS,
)

__all__ = [
    'Config',
    'LogConfig',
    'ProverConfig',
    'RepositoryConfig',
    'GascConfig',
    'PACKAGE_ROOT',
    'DEFAULT_AXIOMS',
    'DEFAULT_PORT',
    'DEFAULT_TIMEOUT_SECONDS',
]
