import shutil
from pathlib import Path

import pytest

from ogp.config import Config, ProverConfig
from ogp.models import ProverSpec
from ogp.repository.server import serve
from ogp.repository.store import store_open
from ogp.services.manager import ServiceManager
from ogp.services.registry import build_registry

from .helpers import STORE


@pytest.fixture(autouse=True)
def clean_environment(monkeypatch):
    for key in ('OGP_PROVERS', 'OGP_POLICY', 'OGP_DEFAULT_TIMEOUT', 'OGP_TGTP_ENDPOINT', 'OGP_AXIOMS',
                'OGP_AXIOM_PATH', 'OGP_GASC_JOBS', 'OGP_REPO_HTTP_PORT'):
        monkeypatch.delenv(key, raising=False)


@pytest.fixture
def prover_config() -> ProverConfig:
    return ProverConfig(default_timeout_ms=60000)


@pytest.fixture
def store_root(tmp_path) -> Path:
    root = tmp_path / 'store'
    shutil.copytree(STORE, root)
    return root


@pytest.fixture
def store(store_root):
    return store_open(store_root)


@pytest.fixture
def live_server(store):
    server = serve(store, '127.0.0.1', 0)
    yield server
    server.stop()


@pytest.fixture
def make_manager():
    """ServiceManager over ddfa plus the given stub specs."""
    def factory(*specs: ProverSpec) -> ServiceManager:
        return ServiceManager(Config()).init_services(registry=build_registry(specs))
    return factory
