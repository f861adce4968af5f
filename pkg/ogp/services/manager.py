"""
Service manager wiring the registry, prover service and portfolio service.
"""
from typing import Any, Dict, Optional

from ..config import Config
from ..logger import get_logger
from .portfolio_service import PortfolioService, load_policy
from .prover_service import ProverService
from .registry import Registry, load_registry

logger = get_logger('service_manager')


class ServiceManager:
    """Manages command-line services."""

    def __init__(self, config: Optional[Config] = None):
        self.config = config or Config()
        self.services: Dict[str, Any] = {}

    def init_services(self, registry: Optional[Registry] = None) -> 'ServiceManager':
        """Initialize all services."""
        try:
            provers = self.config.PROVERS
            registry = registry or load_registry(provers.registry_path)
            self.services['registry'] = registry
            prover_service = ProverService(registry, provers)
            self.services['prover'] = prover_service
            self.services['portfolio'] = PortfolioService(prover_service, load_policy(provers.policy_path))
            logger.debug(f"Services initialized: {', '.join(self.services)}")
        except Exception as e:
            logger.error(f"Failed to initialize services: {e}")
            raise
        return self

    @property
    def registry(self) -> Registry:
        return self.services['registry']

    @property
    def prover(self) -> ProverService:
        return self.services['prover']

    @property
    def portfolio(self) -> PortfolioService:
        return self.services['portfolio']
