import os
from pathlib import Path
from typing import Dict, Any, List, Optional
from dataclasses import dataclass, field
from dotenv import load_dotenv


PACKAGE_ROOT = Path(__file__).resolve().parent.parent
DEFAULT_AXIOMS = 'axioms/ddfa.ax'
DEFAULT_PORT = 7331
DEFAULT_TIMEOUT_SECONDS = 60
DEFAULT_LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'


@dataclass
class LogConfig:
    """日志配置"""
    level: str = 'INFO'
    log_file: str = 'ogp.log'
    log_dir: str = 'logs'
    max_file_size: int = 10 * 1024 * 1024
    backup_count: int = 5
    enable_console: bool = True
    enable_file: bool = False
    console_format: str = DEFAULT_LOG_FORMAT
    file_format: str = DEFAULT_LOG_FORMAT


@dataclass
class ProverConfig:
    """证明器配置"""
    registry_path: Optional[str] = None
    policy_path: Optional[str] = None
    default_timeout_ms: int = DEFAULT_TIMEOUT_SECONDS * 1000
    grace_ms: int = 500
    axiom_include: str = DEFAULT_AXIOMS
    axiom_search_paths: List[str] = field(default_factory=list)
    temp_prefix: str = 'ogp-'

    def __post_init__(self):
        # the bundled axioms/ directory always resolves
        if str(PACKAGE_ROOT) not in self.axiom_search_paths:
            self.axiom_search_paths.append(str(PACKAGE_ROOT))


@dataclass
class RepositoryConfig:
    """题库服务配置"""
    endpoint: str = f'127.0.0.1:{DEFAULT_PORT}'
    root: str = 'tgtp'
    host: str = '127.0.0.1'
    port: int = DEFAULT_PORT
    http_port: Optional[int] = None
    client_timeout: float = 10.0


@dataclass
class GascConfig:
    """竞赛配置"""
    jobs: int = 1


class Config:
    """统一的配置类 - 动态根据环境变量获取配置"""

    def __init__(self):
        load_dotenv()

    @classmethod
    def get_log_config(cls):
        """获取日志配置"""
        return LogConfig(
            level=os.environ.get('LOG_LEVEL', 'INFO'),
            log_file=os.environ.get('LOG_FILE', 'ogp.log'),
            log_dir=os.environ.get('LOG_DIR', 'logs'),
            max_file_size=int(os.environ.get('LOG_MAX_SIZE', 10 * 1024 * 1024)),
            backup_count=int(os.environ.get('LOG_BACKUP_COUNT', 5)),
            enable_console=os.environ.get('LOG_CONSOLE', 'true').lower() == 'true',
            enable_file=os.environ.get('LOG_FILE_ENABLE', 'false').lower() == 'true',
            console_format=os.environ.get('LOG_CONSOLE_FORMAT', DEFAULT_LOG_FORMAT),
            file_format=os.environ.get('LOG_FILE_FORMAT', DEFAULT_LOG_FORMAT)
        )

    @classmethod
    def get_prover_config(cls):
        """获取证明器配置"""
        registry_path = os.environ.get('OGP_PROVERS')
        if registry_path is None and os.path.exists('ogp-provers.json'):
            registry_path = 'ogp-provers.json'
        extra_paths = os.environ.get('OGP_AXIOM_PATH', '')
        return ProverConfig(
            registry_path=registry_path,
            policy_path=os.environ.get('OGP_POLICY'),
            default_timeout_ms=int(float(os.environ.get('OGP_DEFAULT_TIMEOUT', DEFAULT_TIMEOUT_SECONDS)) * 1000),
            grace_ms=int(os.environ.get('OGP_GRACE_MS', 500)),
            axiom_include=os.environ.get('OGP_AXIOMS', DEFAULT_AXIOMS),
            axiom_search_paths=[p for p in extra_paths.split(os.pathsep) if p]
        )

    @classmethod
    def get_repository_config(cls):
        """获取题库配置"""
        http_port = os.environ.get('OGP_REPO_HTTP_PORT')
        return RepositoryConfig(
            endpoint=os.environ.get('OGP_TGTP_ENDPOINT', f'127.0.0.1:{DEFAULT_PORT}'),
            root=os.environ.get('OGP_REPO_ROOT', 'tgtp'),
            host=os.environ.get('OGP_REPO_HOST', '127.0.0.1'),
            port=int(os.environ.get('OGP_REPO_PORT', DEFAULT_PORT)),
            http_port=int(http_port) if http_port else None,
            client_timeout=float(os.environ.get('OGP_CLIENT_TIMEOUT', 10))
        )

    @classmethod
    def get_gasc_config(cls):
        """获取竞赛配置"""
        return GascConfig(jobs=int(os.environ.get('OGP_GASC_JOBS', 1)))

    @property
    def LOG(self):
        return self.get_log_config()

    @property
    def PROVERS(self):
        return self.get_prover_config()

    @property
    def REPOSITORY(self):
        return self.get_repository_config()

    @property
    def GASC(self):
        return self.get_gasc_config()

    @property
    def DEFAULT_TIMEOUT_MS(self):
        return self.PROVERS.default_timeout_ms

    @property
    def TGTP_ENDPOINT(self):
        return self.REPOSITORY.endpoint

    @classmethod
    def validate(cls) -> Dict[str, Any]:
        """验证配置"""
        errors = []
        warnings = []

        config = cls()
        provers = config.PROVERS

        if provers.default_timeout_ms <= 0:
            errors.append("OGP_DEFAULT_TIMEOUT must be positive")
        if provers.grace_ms < 0:
            errors.append("OGP_GRACE_MS must not be negative")
        if provers.registry_path and not os.path.exists(provers.registry_path):
            errors.append(f"Prover registry not found: {provers.registry_path}")
        if provers.policy_path and not os.path.exists(provers.policy_path):
            errors.append(f"Portfolio policy not found: {provers.policy_path}")
        if not provers.registry_path:
            warnings.append("No prover registry configured - only the native ddfa prover is available")

        return {
            'valid': len(errors) == 0,
            'errors': errors,
            'warnings': warnings
        }
