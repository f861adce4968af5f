"""
日志系统 - 使用标准 Python logging

Every module logs under the ``ogp`` hierarchy. Console records go to
stderr because stdout carries FOF text, reports and JSON.
"""
import sys
import logging
from pathlib import Path
from logging.handlers import RotatingFileHandler
from typing import Optional

from .config import Config, LogConfig

ROOT_LOGGER = 'ogp'


def _level(name: str) -> int:
    return getattr(logging, name.upper(), logging.INFO)


def _attach(logger: logging.Logger, handler: logging.Handler, level: int, fmt: str) -> None:
    handler.setLevel(level)
    handler.setFormatter(logging.Formatter(fmt))
    logger.addHandler(handler)


def setup_logging(config: Optional[LogConfig] = None) -> logging.Logger:
    """
    设置日志系统

    Args:
        config: LogConfig 对象，为None时从环境变量读取（Config.get_log_config）

    Returns:
        logging.Logger: 项目根日志器 ``ogp``
    """
    config = config or Config.get_log_config()
    level = _level(config.level)

    logger = logging.getLogger(ROOT_LOGGER)
    logger.setLevel(level)
    logger.propagate = False
    logger.handlers.clear()

    if config.enable_console:
        _attach(logger, logging.StreamHandler(sys.stderr), level, config.console_format)

    if config.enable_file:
        log_dir = Path(config.log_dir)
        log_dir.mkdir(parents=True, exist_ok=True)
        rotating = RotatingFileHandler(log_dir / config.log_file, maxBytes=config.max_file_size,
                                       backupCount=config.backup_count, encoding='utf-8')
        _attach(logger, rotating, level, config.file_format)

    return logger


def get_logger(name: Optional[str] = None) -> logging.Logger:
    """
    获取日志器

    Args:
        name: 组件名称（如 'ddfa'、'repository.server'），为None时返回根日志器

    Returns:
        logging.Logger: ``ogp.<name>``
    """
    return logging.getLogger(f'{ROOT_LOGGER}.{name}' if name else ROOT_LOGGER)
