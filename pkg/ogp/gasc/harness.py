"""
Competition harness: every prover of a set over every problem of a set,
under one time limit, scored by solved count and then total time.
"""
import csv
import io
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, Iterable, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from ..config import Config
from ..errors import GascError, OgpError
from ..logger import get_logger
from ..models import PROBLEM_ID_RE, ProverStatus, RunReport, describe_validation_error
from ..repository.client import client_get
from ..services.prover_service import ProverService
from ..services.registry import Registry
from ..utils import FORMAT_EXTENSIONS, create_safe_filename, format_for_path, stem_for_path

logger = get_logger('gasc')

RESULTS_FILE = 'results.csv'
SCORES_FILES = {'csv': 'scores.csv', 'markdown': 'scores.md'}
RAW_DIR = 'raw'
FETCHED_DIR = 'problems'

SOLVED = (ProverStatus.PROVED, ProverStatus.DISPROVED)


class CompetitionConfig(BaseModel):
    """Competition description, as read from the JSON config file."""
    model_config = ConfigDict(extra='forbid')

    provers: List[str] = Field(min_length=1)
    problems: List[str] = Field(min_length=1)
    per_problem_timeout: int = Field(gt=0, description='milliseconds')
    output_dir: str
    jobs: int = Field(default=1, ge=1)
    format: Literal['csv', 'markdown'] = 'csv'

    @field_validator('provers', 'problems')
    @classmethod
    def _no_duplicates(cls, value: List[str]) -> List[str]:
        seen = set()
        for item in value:
            if item in seen:
                raise ValueError(f'{item!r} is listed twice')
            seen.add(item)
        return value


def load_competition_config(path: str) -> CompetitionConfig:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise GascError(f'cannot read competition config {path}: {e}') from e
    try:
        return CompetitionConfig.model_validate_json(text)
    except ValidationError as e:
        raise GascError(f'{path}: {describe_validation_error(e)}') from e


@dataclass(frozen=True)
class Problem:
    """A problem ready to run: label used in tables, local path and its format."""
    label: str
    path: str
    source_format: str


@dataclass
class ResultMatrix:
    provers: List[str]
    problems: List[str]
    cells: Dict[Tuple[str, str], RunReport] = field(default_factory=dict)

    def cell(self, prover: str, problem: str) -> RunReport:
        return self.cells[(prover, problem)]

    @property
    def complete(self) -> bool:
        return all((p, q) in self.cells for p in self.provers for q in self.problems)

    def rows(self) -> Iterable[Tuple[str, str, RunReport]]:
        """Cells in prover-major order."""
        for prover in self.provers:
            for problem in self.problems:
                yield prover, problem, self.cells[(prover, problem)]


@dataclass(frozen=True)
class ScoreRow:
    prover: str
    solved: int
    time_ms: int
    rank: int


ScoreTable = List[ScoreRow]


def resolve_problems(config: CompetitionConfig, endpoint: Optional[str] = None,
                     timeout: float = 10.0) -> List[Problem]:
    """
    Make every problem locally readable, fetching repository ids into
    ``output_dir/problems/``.

    Raises:
        GascError: unreadable file, unknown format, fetch failure, duplicate labels
    """
    problems: List[Problem] = []
    fetched_dir = Path(config.output_dir) / FETCHED_DIR
    for entry in config.problems:
        path = Path(entry)
        if path.is_file():
            fmt = format_for_path(path)
            if fmt is None:
                raise GascError(f'unknown problem format: {entry}')
            problems.append(Problem(stem_for_path(path), str(path), fmt))
            continue
        if not PROBLEM_ID_RE.match(entry):
            raise GascError(f'problem {entry} is neither a readable file nor a repository id')
        if endpoint is None:
            endpoint = Config().REPOSITORY.endpoint
        try:
            fmt, content = client_get(endpoint, entry, 'fof', timeout)
            fetched_dir.mkdir(parents=True, exist_ok=True)
            target = fetched_dir / f'{entry}{FORMAT_EXTENSIONS[fmt]}'
            target.write_text(content, encoding='utf-8')
        except (OgpError, OSError) as e:
            raise GascError(f'cannot fetch problem {entry}: {e}') from e
        logger.info(f"Fetched {entry} into {target}")
        problems.append(Problem(entry, str(target), fmt))

    labels = [p.label for p in problems]
    duplicates = sorted({label for label in labels if labels.count(label) > 1})
    if duplicates:
        raise GascError(f"problem labels clash: {', '.join(duplicates)}")
    return problems


def _archive_raw(raw_dir: Path, prover: str, problem: str, report: RunReport) -> None:
    name = f'{create_safe_filename(prover)}__{create_safe_filename(problem)}.txt'
    (raw_dir / name).write_text(report.raw_output, encoding='utf-8')


def run_competition(config: CompetitionConfig, registry: Registry,
                    prover_service: Optional[ProverService] = None,
                    endpoint: Optional[str] = None) -> ResultMatrix:
    """
    Run every (prover, problem) pair with the configured timeout.

    Args:
        config: competition description
        registry: provers available to the harness
        prover_service: runner to use; built over ``registry`` when None
        endpoint: repository endpoint for problem ids

    Returns:
        complete ResultMatrix

    Raises:
        GascError: unregistered prover or unreadable problem, before any run
    """
    unknown = [name for name in config.provers if name not in registry]
    if unknown:
        raise GascError(f"unregistered prover(s): {', '.join(unknown)} "
                        f"(available: {', '.join(registry.names())})")
    problems = resolve_problems(config, endpoint)

    output_dir = Path(config.output_dir)
    raw_dir = output_dir / RAW_DIR
    try:
        raw_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise GascError(f'cannot create output directory {output_dir}: {e}') from e

    runner = prover_service or ProverService(registry, Config().PROVERS)
    matrix = ResultMatrix(list(config.provers), [p.label for p in problems])
    tasks = [(prover, problem) for prover in config.provers for problem in problems]
    lock = threading.Lock()

    def run_cell(prover: str, problem: Problem) -> None:
        report = runner.run(prover, problem.path, problem.source_format, config.per_problem_timeout)
        _archive_raw(raw_dir, prover, problem.label, report)
        with lock:
            matrix.cells[(prover, problem.label)] = report
        logger.info(f"[{len(matrix.cells)}/{len(tasks)}] {prover} on {problem.label}: "
                    f"{report.status.value} ({report.time_ms} ms)")

    logger.info(f"Competition: {len(config.provers)} provers x {len(problems)} problems, "
                f"{config.per_problem_timeout} ms each, {config.jobs} job(s)")
    if config.jobs == 1:
        for prover, problem in tasks:
            run_cell(prover, problem)
    else:
        logger.warning("Running cells concurrently; times are not comparable across jobs")
        with ThreadPoolExecutor(max_workers=config.jobs, thread_name_prefix='ogp-gasc') as pool:
            for future in [pool.submit(run_cell, prover, problem) for prover, problem in tasks]:
                future.result()
    return matrix


def score(matrix: ResultMatrix) -> ScoreTable:
    """
    Rank provers by solved count (descending), then total time over solved
    cells (ascending). Equal pairs share a rank; the next rank skips.
    """
    totals = []
    for prover in matrix.provers:
        solved = [matrix.cell(prover, q) for q in matrix.problems if matrix.cell(prover, q).status in SOLVED]
        totals.append((prover, len(solved), sum(r.time_ms for r in solved)))

    ordered = sorted(totals, key=lambda t: (-t[1], t[2], t[0]))
    table: ScoreTable = []
    for prover, solved, time_ms in ordered:
        better = sum(1 for _, s, t in totals if (s, -t) > (solved, -time_ms))
        table.append(ScoreRow(prover, solved, time_ms, better + 1))
    return table


def results_csv(matrix: ResultMatrix) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['prover', 'problem', 'status', 'time_ms'])
    for prover, problem, report in matrix.rows():
        writer.writerow([prover, problem, report.status.value, report.time_ms])
    return buffer.getvalue()


def scores_csv(table: ScoreTable) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(['rank', 'prover', 'solved', 'time_ms'])
    for row in table:
        writer.writerow([row.rank, row.prover, row.solved, row.time_ms])
    return buffer.getvalue()


def scores_markdown(table: ScoreTable, matrix: ResultMatrix) -> str:
    lines = [f'| rank | prover | solved / {len(matrix.problems)} | time (ms) |',
             '|---:|---|---:|---:|']
    for row in table:
        lines.append(f'| {row.rank} | {row.prover} | {row.solved} | {row.time_ms} |')
    return '\n'.join(lines) + '\n'


def emit(table: ScoreTable, matrix: ResultMatrix, output_dir: str, fmt: str = 'csv') -> List[Path]:
    """
    Write ``results.csv`` and ``scores.csv``/``scores.md``.

    Returns:
        paths written

    Raises:
        GascError: unknown format or unwritable output directory
    """
    if fmt not in SCORES_FILES:
        raise GascError(f"unknown score format {fmt!r} (expected csv or markdown)")
    scores = scores_csv(table) if fmt == 'csv' else scores_markdown(table, matrix)
    out = Path(output_dir)
    written = [out / RESULTS_FILE, out / SCORES_FILES[fmt]]
    try:
        out.mkdir(parents=True, exist_ok=True)
        # newline='' keeps \n on every platform
        with open(written[0], 'w', encoding='utf-8', newline='') as f:
            f.write(results_csv(matrix))
        with open(written[1], 'w', encoding='utf-8', newline='') as f:
            f.write(scores)
    except OSError as e:
        raise GascError(f'cannot write results to {out}: {e}') from e
    logger.info(f"Wrote {', '.join(str(p) for p in written)}")
    return written
