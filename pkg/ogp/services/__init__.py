"""
Prover runtime, portfolio and service wiring.
"""
from .registry import Registry, load_registry, build_registry, builtin_ddfa
from .negotiation import ConversionPlan, Direct, ViaFilter, Unsupported, negotiate_format
from .postprocess import PostResult, postprocess_szs, postprocess_ogp, POST_PROCESSORS
from .prover_service import ProverService, kill_process_tree
from .portfolio_service import (
    PortfolioService, PortfolioPlan, PolicyTable, PolicyRule, Condition, SyntacticFeatures,
    DEFAULT_POLICY, PORTFOLIO_NAME, extract_features, select, split_budget, load_policy,
)
from .manager import ServiceManager

__all__ = [
    'Registry', 'load_registry', 'build_registry', 'builtin_ddfa',
    'ConversionPlan', 'Direct', 'ViaFilter', 'Unsupported', 'negotiate_format',
    'PostResult', 'postprocess_szs', 'postprocess_ogp', 'POST_PROCESSORS',
    'ProverService', 'kill_process_tree',
    'PortfolioService', 'PortfolioPlan', 'PolicyTable', 'PolicyRule', 'Condition',
    'SyntacticFeatures', 'DEFAULT_POLICY', 'PORTFOLIO_NAME', 'extract_features', 'select',
    'split_budget', 'load_policy',
    'ServiceManager',
]
