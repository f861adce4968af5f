"""
Repository client: single request per connection.
"""
import socket
from typing import Any, Dict, List, Tuple

from pydantic import ValidationError

from ..errors import BadRequestError, InternalError, NotFoundError, RepositoryError, TransportError
from ..logger import get_logger
from ..models import QueryResponse
from .protocol import read_json_line, send_json_line

logger = get_logger('repository.client')

ERRORS = {
    'not_found': NotFoundError,
    'bad_request': BadRequestError,
    'internal': InternalError,
}


def parse_endpoint(endpoint: str) -> Tuple[str, int]:
    host, sep, port = endpoint.rpartition(':')
    if not sep or not host:
        raise TransportError(f'invalid endpoint {endpoint!r} (expected host:port)')
    try:
        return host, int(port)
    except ValueError:
        raise TransportError(f'invalid port in endpoint {endpoint!r}') from None


def _round_trip(endpoint: str, payload: Dict[str, Any], timeout: float) -> QueryResponse:
    host, port = parse_endpoint(endpoint)
    try:
        with socket.create_connection((host, port), timeout=timeout) as sock:
            sock.settimeout(timeout)
            send_json_line(sock, payload)
            data = read_json_line(sock)
    except (OSError, ConnectionError) as e:
        raise TransportError(f'repository {endpoint} unreachable: {e}') from e
    except ValueError as e:
        raise TransportError(f'repository {endpoint} sent a malformed response: {e}') from e
    try:
        response = QueryResponse.model_validate(data)
    except ValidationError as e:
        raise TransportError(f'repository {endpoint} sent an invalid response: {e}') from None
    if response.status == 'error':
        error = ERRORS.get(response.code, RepositoryError)
        raise error(response.message or 'error', response.code)
    return response


def client_get(endpoint: str, problem_id: str, fmt: str = 'fof', timeout: float = 10.0) -> Tuple[str, str]:
    """
    Fetch one problem.

    Args:
        endpoint: host:port of the repository server
        problem_id: e.g. GEO0001
        fmt: requested format; the server falls back to fof

    Returns:
        (format actually returned, content)

    Raises:
        TransportError: server unreachable or response unreadable
        RepositoryError: the server answered with an error code
    """
    response = _round_trip(endpoint, {'op': 'get', 'id': problem_id, 'format': fmt}, timeout)
    if not response.content or not response.format:
        raise TransportError(f'repository {endpoint} returned no content for {problem_id}')
    if response.format != fmt:
        logger.info(f"{problem_id}: {fmt} not stored, server returned {response.format}")
    return response.format, response.content


def client_list(endpoint: str, timeout: float = 10.0) -> List[str]:
    response = _round_trip(endpoint, {'op': 'list'}, timeout)
    return list(response.ids or [])
