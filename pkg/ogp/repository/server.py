"""
Always-listening repository query server.
"""
import socketserver
import threading
from typing import Optional, Tuple

from ..errors import StoreError
from ..logger import get_logger
from ..models import QueryResponse
from .protocol import MAX_LINE_BYTES, handle_line
from .store import Store

logger = get_logger('repository.server')


class QueryHandler(socketserver.StreamRequestHandler):
    """One request line in, one response line out, then close."""

    timeout = 30

    def handle(self):
        try:
            line = self.rfile.readline(MAX_LINE_BYTES + 1)
        except OSError as e:
            logger.warning(f"{self.client_address[0]}: read failed: {e}")
            return
        if len(line) > MAX_LINE_BYTES and not line.endswith(b'\n'):
            response = QueryResponse.failure('bad_request', f'request line exceeds {MAX_LINE_BYTES} bytes')
        else:
            response = handle_line(self.server.store, line)
        if response.status == 'error':
            logger.info(f"{self.client_address[0]}: {response.code}: {response.message}")
        try:
            self.wfile.write(response.to_line())
            self.wfile.flush()
        except OSError as e:
            logger.warning(f"{self.client_address[0]}: write failed: {e}")


class RepositoryServer(socketserver.ThreadingTCPServer):
    allow_reuse_address = True
    daemon_threads = True

    def __init__(self, store: Store, address: Tuple[str, int]):
        self.store = store
        super().__init__(address, QueryHandler)
        self._thread: Optional[threading.Thread] = None

    @property
    def host(self) -> str:
        return self.server_address[0]

    @property
    def port(self) -> int:
        return self.server_address[1]

    @property
    def endpoint(self) -> str:
        return f'{self.host}:{self.port}'

    def start(self) -> 'RepositoryServer':
        self._thread = threading.Thread(target=self.serve_forever, name='ogp-repod', daemon=True)
        self._thread.start()
        logger.info(f"Repository server listening on {self.endpoint} ({len(self.store.ids())} problems)")
        return self

    def stop(self) -> None:
        self.shutdown()
        self.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)
        logger.info(f"Repository server on {self.endpoint} stopped")

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.stop()


def serve(store: Store, bind_address: str = '127.0.0.1', port: int = 0) -> RepositoryServer:
    """
    Start serving ``store`` in a background thread.

    Args:
        store: opened store
        bind_address: interface to bind
        port: TCP port; 0 picks a free one

    Returns:
        running RepositoryServer (use ``.port`` for the bound port)
    """
    try:
        server = RepositoryServer(store, (bind_address, port))
    except OSError as e:
        raise StoreError(f'cannot bind {bind_address}:{port}: {e}') from e
    return server.start()
