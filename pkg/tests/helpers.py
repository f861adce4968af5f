import socket
import sys
from pathlib import Path
from typing import List

from ogp.config import PACKAGE_ROOT
from ogp.models import ProverSpec

FIXTURES = Path(__file__).parent / 'fixtures'
FOF_DIR = FIXTURES / 'fof'
CONJECTURES = FIXTURES / 'conjectures'
STUBS = FIXTURES / 'stubs'
STORE = FIXTURES / 'store'
AXIOM_PATHS = [str(PACKAGE_ROOT)]


def fof_corpus() -> List[Path]:
    return sorted(FOF_DIR.glob('*.fof'))


def stub_spec(name: str, script: str, *args: str, formats=('fof',), post='szs', default_for=()) -> ProverSpec:
    """An external prover entry running a bundled stub with the current interpreter."""
    return ProverSpec(
        name=name,
        executable=sys.executable,
        arg_template=[str(STUBS / script), '{input}', *args],
        accepted_formats=list(formats),
        post_processor=post,
        default_for_extensions=list(default_for),
    )


def free_port() -> int:
    """A local port with nothing listening on it."""
    with socket.socket() as sock:
        sock.bind(('127.0.0.1', 0))
        return sock.getsockname()[1]
