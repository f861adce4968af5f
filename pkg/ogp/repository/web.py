"""
Read-only HTTP mirror of the repository (browse surface).

    GET /api/problems               -> {"problems": [ProblemRecord, ...]}
    GET /api/problems/<id>?format=  -> {"id", "format", "content"}
    GET /health
"""
import threading
from typing import Optional

from flask import Blueprint, Flask, current_app, jsonify, request
from werkzeug.exceptions import HTTPException
from werkzeug.serving import BaseWSGIServer, make_server

from ..errors import RepositoryError
from ..logger import get_logger
from .store import Store

logger = get_logger('repository.http')

STATUS_CODES = {
    'not_found': 404,
    'bad_request': 400,
    'internal': 500,
}

api_bp = Blueprint('api', __name__)


def _store() -> Store:
    return current_app.config['OGP_STORE']


@api_bp.route('/api/problems', methods=['GET'])
def list_problems():
    records = [record.model_dump(mode='json') for record in _store().records()]
    return jsonify({'problems': records, 'count': len(records)})


@api_bp.route('/api/problems/<problem_id>', methods=['GET'])
def get_problem(problem_id: str):
    requested = request.args.get('format', 'fof')
    fmt, content = _store().get(problem_id, requested)
    return jsonify({'id': problem_id, 'format': fmt, 'content': content})


@api_bp.route('/health', methods=['GET'])
def health():
    return jsonify({'status': 'ok', 'problems': len(_store().ids())})


def error_response(code: str, message: str, status: int):
    """Body shared by every mirror error: ``{"error", "message", "status_code"}``."""
    return jsonify({'error': code, 'message': message, 'status_code': status}), status


def register_error_handlers(app: Flask):
    """Register JSON error handlers for the mirror."""
    wire_codes = {status: code for code, status in STATUS_CODES.items()}

    @app.errorhandler(RepositoryError)
    def repository_error(error: RepositoryError):
        status = STATUS_CODES.get(error.code, 500)
        if status == 500:
            logger.error(f"Repository error: {error}")
        return error_response(error.code, error.message, status)

    @app.errorhandler(HTTPException)
    def http_error(error: HTTPException):
        code = wire_codes.get(error.code, error.name.lower().replace(' ', '_'))
        return error_response(code, str(error.description), error.code)

    @app.errorhandler(Exception)
    def unexpected_error(error: Exception):
        logger.error(f"Unhandled exception in HTTP mirror: {error}", exc_info=True)
        return error_response('internal', 'An unexpected error occurred', 500)


def create_http_app(store: Store) -> Flask:
    """
    Build the Flask mirror for ``store``.

    Args:
        store: opened store, shared with the TCP server

    Returns:
        Flask application
    """
    app = Flask('ogp.repository')
    app.config['OGP_STORE'] = store
    app.config['JSON_SORT_KEYS'] = False
    app.register_blueprint(api_bp)
    register_error_handlers(app)
    return app


class HttpMirror:
    """Runs the Flask mirror on a werkzeug server thread."""

    def __init__(self, store: Store, host: str, port: int):
        self.app = create_http_app(store)
        self.server: BaseWSGIServer = make_server(host, port, self.app, threaded=True)
        self._thread: Optional[threading.Thread] = None

    @property
    def port(self) -> int:
        return self.server.server_port

    def start(self) -> 'HttpMirror':
        self._thread = threading.Thread(target=self.server.serve_forever, name='ogp-http', daemon=True)
        self._thread.start()
        logger.info(f"HTTP mirror listening on {self.server.host}:{self.port}")
        return self

    def stop(self) -> None:
        self.server.shutdown()
        if self._thread is not None:
            self._thread.join(timeout=5)
