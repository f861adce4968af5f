"""
Repository commands: ``ogp-repod`` (server) and ``ingest``.
"""
import argparse
import sys
import threading
from typing import List, Optional

from ..config import Config
from ..errors import OgpError
from ..logger import get_logger
from .server import serve
from .store import store_open
from .web import HttpMirror

logger = get_logger('repository.cli')


def build_repod_parser() -> argparse.ArgumentParser:
    config = Config().REPOSITORY
    parser = argparse.ArgumentParser(prog='ogp-repod', description='Serve a geometry problem repository')
    parser.add_argument('--root', default=config.root, help=f'store directory (default: {config.root})')
    parser.add_argument('--host', default=config.host, help=f'bind address (default: {config.host})')
    parser.add_argument('--port', type=int, default=config.port, help=f'TCP port (default: {config.port})')
    parser.add_argument('--http-port', type=int, default=config.http_port,
                        help='also serve the read-only HTTP mirror on this port')
    return parser


def repod_main(argv: Optional[List[str]] = None, stop_event: Optional[threading.Event] = None) -> int:
    """Run the query server until interrupted (or ``stop_event`` is set)."""
    args = build_repod_parser().parse_args(argv)
    try:
        store = store_open(args.root)
        server = serve(store, args.host, args.port)
    except (OgpError, OSError) as e:
        print(f'ogp-repod: {e}', file=sys.stderr)
        return 1
    mirror = None
    if args.http_port is not None:
        try:
            mirror = HttpMirror(store, args.host, args.http_port).start()
        except OSError as e:
            server.stop()
            print(f'ogp-repod: HTTP mirror: {e}', file=sys.stderr)
            return 1

    print(f'ogp-repod: serving {len(store.ids())} problems on {server.endpoint}', file=sys.stderr)
    stop_event = stop_event or threading.Event()
    try:
        while not stop_event.wait(0.5):
            pass
    except KeyboardInterrupt:
        logger.info("Repository server interrupted")
    finally:
        if mirror is not None:
            mirror.stop()
        server.stop()
    return 0


def build_ingest_parser() -> argparse.ArgumentParser:
    config = Config().REPOSITORY
    parser = argparse.ArgumentParser(prog='ogp-ingest', description='Add a problem to a repository store')
    parser.add_argument('--root', default=config.root, help=f'store directory (default: {config.root})')
    parser.add_argument('--id', required=True, dest='problem_id', help='problem id, e.g. GEO0004')
    parser.add_argument('--title', default='', help='problem title')
    parser.add_argument('--fof', required=True, help='FOF file (mandatory)')
    parser.add_argument('--gcl', help='GCL file')
    parser.add_argument('--jgex', help='JGEX file')
    parser.add_argument('--geogebra', help='GeoGebra XML file')
    parser.add_argument('--overwrite', action='store_true', help='replace an existing problem')
    return parser


def ingest_main(argv: Optional[List[str]] = None) -> int:
    args = build_ingest_parser().parse_args(argv)
    files = {fmt: getattr(args, fmt) for fmt in ('fof', 'gcl', 'jgex', 'geogebra') if getattr(args, fmt)}
    try:
        store = store_open(args.root)
        manifest = store.ingest(args.problem_id, args.title, files, overwrite=args.overwrite)
    except OgpError as e:
        print(f'ingest: {e}', file=sys.stderr)
        return 1
    print(f'{args.problem_id}: stored ({len(manifest.ids)} problems in {args.root})')
    return 0
