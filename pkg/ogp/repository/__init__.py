"""
TGTP-style problem repository: store, query server, client and HTTP mirror.
"""
from .store import Store, store_open, FORMAT_FILES, ReadWriteLock
from .protocol import decode_request, handle_line, handle_request
from .server import RepositoryServer, serve
from .client import client_get, client_list, parse_endpoint
from .web import create_http_app, HttpMirror

__all__ = [
    'Store', 'store_open', 'FORMAT_FILES', 'ReadWriteLock',
    'decode_request', 'handle_line', 'handle_request',
    'RepositoryServer', 'serve',
    'client_get', 'client_list', 'parse_endpoint',
    'create_http_app', 'HttpMirror',
]
