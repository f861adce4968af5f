"""
Repository wire protocol: one UTF-8 JSON object per line, one request per
connection.

    -> {"op": "get", "id": "GEO0001", "format": "gcl"}
    <- {"status": "ok", "id": "GEO0001", "format": "gcl", "content": "..."}
    -> {"op": "list"}
    <- {"status": "ok", "ids": ["GEO0001", ...]}
    <- {"status": "error", "code": "not_found", "message": "..."}
"""
import json
import socket
from typing import Any, Dict

from pydantic import ValidationError

from ..errors import BadRequestError, RepositoryError
from ..logger import get_logger
from ..models import QueryRequest, QueryResponse, describe_validation_error
from .store import Store

logger = get_logger('repository.protocol')

MAX_LINE_BYTES = 1 << 20


def decode_request(line: bytes) -> QueryRequest:
    """Decode one request line; every failure is a BadRequestError."""
    try:
        text = line.decode('utf-8')
    except UnicodeDecodeError:
        raise BadRequestError('request is not valid UTF-8') from None
    try:
        data = json.loads(text)
    except ValueError as e:
        raise BadRequestError(f'malformed JSON: {e}') from None
    if not isinstance(data, dict):
        raise BadRequestError('request must be a JSON object')
    try:
        return QueryRequest.model_validate(data)
    except ValidationError as e:
        raise BadRequestError(describe_validation_error(e)) from None


def handle_request(store: Store, request: QueryRequest) -> QueryResponse:
    if request.op == 'list':
        return QueryResponse.listing(store.ids())
    fmt, content = store.get(request.id, request.format)
    return QueryResponse.problem(request.id, fmt, content)


def handle_line(store: Store, line: bytes) -> QueryResponse:
    """
    Answer one request line. Never raises.

    Args:
        store: problem store
        line: raw request bytes, with or without the trailing newline

    Returns:
        QueryResponse (error responses carry not_found, bad_request or internal)
    """
    try:
        request = decode_request(line.rstrip(b'\r\n'))
        return handle_request(store, request)
    except RepositoryError as e:
        return QueryResponse.failure(e.code, e.message)
    except Exception as e:
        logger.error(f"Unhandled error answering request: {e}", exc_info=True)
        return QueryResponse.failure('internal', 'an unexpected error occurred')


def send_json_line(sock: socket.socket, payload: Dict[str, Any]) -> None:
    sock.sendall((json.dumps(payload) + '\n').encode('utf-8'))


def read_json_line(sock: socket.socket) -> Dict[str, Any]:
    """Read bytes up to the first newline (or EOF) and decode them as JSON."""
    data = bytearray()
    while b'\n' not in data:
        chunk = sock.recv(65536)
        if not chunk:
            break
        data.extend(chunk)
        if len(data) > MAX_LINE_BYTES * 64:
            raise ConnectionError('response line too long')
    if not data:
        raise ConnectionError('connection closed without a response')
    line = bytes(data).split(b'\n', 1)[0]
    return json.loads(line.decode('utf-8'))
