"""
File-backed problem store.

Layout::

    <root>/manifest.json                {"ids": ["GEO0001", ...]}
    <root>/problems/<ID>/meta.json      ProblemRecord
    <root>/problems/<ID>/problem.<ext>  one file per stored format

The manifest is the source of truth: a problem directory it does not list
is invisible.
"""
import json
import os
import shutil
import threading
import uuid
from contextlib import contextmanager
from datetime import datetime, timezone
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Mapping, Optional, Tuple, Union

from pydantic import ValidationError

from ..errors import BadRequestError, IngestError, InternalError, NotFoundError, OgpError, StoreError
from ..fof.parser import parse_fof
from ..frontends import parse_conjecture
from ..logger import get_logger
from ..models import REPOSITORY_FORMATS, Manifest, ProblemRecord, describe_validation_error

logger = get_logger('repository.store')

MANIFEST = 'manifest.json'
PROBLEMS_DIR = 'problems'
META = 'meta.json'
FORMAT_FILES = {
    'fof': 'problem.fof',
    'gcl': 'problem.gcl',
    'jgex': 'problem.jgex',
    'geogebra': 'problem.ggb.xml',
}

PathLike = Union[str, Path]


class ReadWriteLock:
    """Many readers or one writer."""

    def __init__(self):
        self._cond = threading.Condition()
        self._readers = 0
        self._writer = False

    @contextmanager
    def read(self) -> Iterator[None]:
        with self._cond:
            while self._writer:
                self._cond.wait()
            self._readers += 1
        try:
            yield
        finally:
            with self._cond:
                self._readers -= 1
                if self._readers == 0:
                    self._cond.notify_all()

    @contextmanager
    def write(self) -> Iterator[None]:
        with self._cond:
            while self._writer or self._readers:
                self._cond.wait()
            self._writer = True
        try:
            yield
        finally:
            with self._cond:
                self._writer = False
                self._cond.notify_all()


def _write_json_atomic(path: Path, text: str) -> None:
    tmp = path.with_name(f'.{path.name}.{uuid.uuid4().hex}.tmp')
    with open(tmp, 'w', encoding='utf-8') as f:
        f.write(text)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp, path)


def validate_content(fmt: str, text: str) -> None:
    """Parse ``text`` with the frontend for ``fmt``; raise the parser's error."""
    if fmt == 'fof':
        if not parse_fof(text).formulas:
            raise IngestError('fof document has no formulas')
    else:
        parse_conjecture(text, fmt)


class Store:
    """
    Problem store opened on a root directory.

    Args:
        root: store directory
        records: validated records keyed by id, manifest order
    """

    def __init__(self, root: PathLike, records: Dict[str, ProblemRecord]):
        self.root = Path(root)
        self._records = dict(records)
        self.lock = ReadWriteLock()
        # test hook, called with a stage name during ingest
        self.fail_point: Optional[Callable[[str], None]] = None

    def _problem_dir(self, problem_id: str) -> Path:
        return self.root / PROBLEMS_DIR / problem_id

    def ids(self) -> List[str]:
        with self.lock.read():
            return list(self._records)

    def records(self) -> List[ProblemRecord]:
        with self.lock.read():
            return list(self._records.values())

    def record(self, problem_id: str) -> ProblemRecord:
        with self.lock.read():
            record = self._records.get(problem_id)
        if record is None:
            raise NotFoundError(f'no problem {problem_id}')
        return record

    def get(self, problem_id: str, fmt: str = 'fof') -> Tuple[str, str]:
        """
        Fetch a problem, falling back to FOF when ``fmt`` is not stored.

        Returns:
            (format actually returned, content)
        """
        if fmt not in REPOSITORY_FORMATS:
            raise BadRequestError(f"unknown format {fmt!r} (expected one of {', '.join(REPOSITORY_FORMATS)})")
        with self.lock.read():
            record = self._records.get(problem_id)
            if record is None:
                raise NotFoundError(f'no problem {problem_id}')
            actual = fmt if fmt in record.formats else 'fof'
            path = self._problem_dir(problem_id) / FORMAT_FILES[actual]
            try:
                content = path.read_bytes().decode('utf-8')
            except (OSError, UnicodeDecodeError) as e:
                raise InternalError(f'{problem_id}: cannot read {path.name}: {e}') from e
        return actual, content

    def _stage(self, stage: str) -> None:
        if self.fail_point is not None:
            self.fail_point(stage)

    def ingest(self, problem_id: str, title: str, files: Mapping[str, PathLike],
               overwrite: bool = False) -> Manifest:
        """
        Add (or replace) a problem and rewrite the manifest atomically.

        Args:
            problem_id: GEO followed by four digits
            title: human title
            files: format -> source path; ``fof`` is mandatory
            overwrite: replace an existing problem

        Returns:
            the new Manifest
        """
        if 'fof' not in files:
            raise IngestError(f'{problem_id}: a fof file is required')
        unknown = sorted(set(files) - set(REPOSITORY_FORMATS))
        if unknown:
            raise IngestError(f"unknown format(s): {', '.join(unknown)}")

        contents: Dict[str, bytes] = {}
        for fmt, path in files.items():
            try:
                data = Path(path).read_bytes()
                validate_content(fmt, data.decode('utf-8'))
            except (OSError, UnicodeDecodeError) as e:
                raise IngestError(f'{path}: {e}') from e
            except OgpError as e:
                raise IngestError(f'{path}: {e}') from e
            contents[fmt] = data

        now = datetime.now(timezone.utc)
        with self.lock.write():
            previous = self._records.get(problem_id)
            if previous is not None and not overwrite:
                raise IngestError(f'{problem_id} already exists (use --overwrite)')
            try:
                record = ProblemRecord(id=problem_id, title=title,
                                       formats=[f for f in REPOSITORY_FORMATS if f in contents],
                                       created=previous.created if previous else now, modified=now)
            except ValidationError as e:
                raise IngestError(describe_validation_error(e)) from None

            problems = self.root / PROBLEMS_DIR
            problems.mkdir(parents=True, exist_ok=True)
            staging = problems / f'.staging-{problem_id}-{uuid.uuid4().hex}'
            staging.mkdir()
            target = self._problem_dir(problem_id)
            trash: Optional[Path] = None
            installed = False
            try:
                for fmt, data in contents.items():
                    (staging / FORMAT_FILES[fmt]).write_bytes(data)
                (staging / META).write_text(record.model_dump_json(indent=2), encoding='utf-8')
                self._stage('staged')

                if target.exists():
                    trash = problems / f'.trash-{problem_id}-{uuid.uuid4().hex}'
                    os.replace(target, trash)
                os.replace(staging, target)
                installed = True

                ids = list(self._records)
                if problem_id not in ids:
                    ids.append(problem_id)
                manifest = Manifest(ids=sorted(ids))
                self._stage('manifest')
                _write_json_atomic(self.root / MANIFEST, manifest.model_dump_json(indent=2))
            except BaseException:
                # put the previous problem directory back
                if installed:
                    shutil.rmtree(target, ignore_errors=True)
                if trash is not None and trash.exists():
                    os.replace(trash, target)
                shutil.rmtree(staging, ignore_errors=True)
                raise
            if trash is not None:
                shutil.rmtree(trash, ignore_errors=True)
            self._records[problem_id] = record
            self._records = {i: self._records[i] for i in manifest.ids}
        logger.info(f"Ingested {problem_id} ({', '.join(record.formats)})")
        return manifest


def store_open(root: PathLike) -> Store:
    """
    Open (or create) a store.

    Args:
        root: store directory; created when missing

    Returns:
        Store with every manifest record validated
    """
    root = Path(root)
    try:
        root.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise StoreError(f'cannot create store root {root}: {e}') from e

    manifest_path = root / MANIFEST
    if not manifest_path.exists():
        logger.debug(f"No manifest in {root}: empty store")
        return Store(root, {})
    try:
        manifest = Manifest.model_validate_json(manifest_path.read_text(encoding='utf-8'))
    except (OSError, ValueError) as e:
        raise StoreError(f'corrupt manifest {manifest_path}: {e}') from None

    records: Dict[str, ProblemRecord] = {}
    for problem_id in manifest.ids:
        if problem_id in records:
            raise StoreError(f'corrupt manifest: {problem_id} listed twice')
        problem_dir = root / PROBLEMS_DIR / problem_id
        try:
            record = ProblemRecord.model_validate_json((problem_dir / META).read_text(encoding='utf-8'))
        except OSError as e:
            raise StoreError(f'{problem_id}: cannot read {META}: {e}') from None
        except ValidationError as e:
            raise StoreError(f'{problem_id}: invalid {META}: {describe_validation_error(e)}') from None
        if record.id != problem_id:
            raise StoreError(f'{problem_id}: {META} names {record.id}')
        for fmt in record.formats:
            if not (problem_dir / FORMAT_FILES[fmt]).is_file():
                raise StoreError(f'{problem_id}: missing {FORMAT_FILES[fmt]}')
        records[problem_id] = record
    logger.info(f"Opened store {root} ({len(records)} problems)")
    return Store(root, records)
