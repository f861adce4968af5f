"""
Utility functions shared by the command-line tools.
"""
import os
import re
import tempfile
from pathlib import Path
from typing import Optional, Union

from .logger import get_logger

logger = get_logger('utils')

# longest suffix first so .ggb.xml wins over .xml
EXTENSION_FORMATS = {
    '.ggb.xml': 'geogebra',
    '.fof': 'fof',
    '.p': 'fof',
    '.gcl': 'gcl',
    '.jgex': 'jgex',
    '.coqam': 'coqam',
}

FORMAT_EXTENSIONS = {
    'fof': '.fof',
    'gcl': '.gcl',
    'jgex': '.jgex',
    'geogebra': '.ggb.xml',
    'coqam': '.coqam',
}


def file_extension(filename: Union[str, Path]) -> str:
    """
    获取文件扩展名（识别双扩展名 .ggb.xml）

    Args:
        filename: 文件名

    Returns:
        小写扩展名，含前导点；没有扩展名时返回空字符串
    """
    name = Path(filename).name.lower()
    for ext in EXTENSION_FORMATS:
        if name.endswith(ext) and len(name) > len(ext):
            return ext
    return Path(name).suffix


def format_for_path(filename: Union[str, Path]) -> Optional[str]:
    """Source format implied by the file name, or None."""
    return EXTENSION_FORMATS.get(file_extension(filename))


def stem_for_path(filename: Union[str, Path]) -> str:
    name = Path(filename).name
    ext = file_extension(name)
    return name[:-len(ext)] if ext else name


def create_safe_filename(name: str) -> str:
    """
    创建安全的文件名

    Args:
        name: 原始名称（证明器名、题目编号）

    Returns:
        只含字母、数字、点、下划线和连字符的文件名
    """
    safe = re.sub(r'[^A-Za-z0-9._\-]+', '_', name).strip('._')
    return safe or 'unnamed'


def write_temp_file(content: str, suffix: str, prefix: str = 'ogp-') -> str:
    """Write ``content`` to a fresh temporary file and return its path."""
    fd, path = tempfile.mkstemp(prefix=prefix, suffix=suffix)
    with os.fdopen(fd, 'w', encoding='utf-8') as f:
        f.write(content)
    logger.debug(f"Wrote temporary file {path}")
    return path


def remove_quietly(path: Optional[str]) -> None:
    if not path:
        return
    try:
        os.unlink(path)
    except OSError:
        pass
