"""
Prover service: runs native provers in-process and external provers as
child processes under a wall-clock limit.
"""
import os
import shutil
import signal
import subprocess
import threading
import time
from pathlib import Path
from typing import List, Optional, Sequence, Tuple, Union

import psutil

from ..config import ProverConfig
from ..ddfa.engine import SaturationLimits
from ..ddfa.prover import prove
from ..errors import OgpError
from ..filters.cli import convert_text
from ..fof.includes import load_fof
from ..logger import get_logger
from ..models import ProverKind, ProverSpec, ProverStatus, RunReport
from ..utils import format_for_path, remove_quietly, stem_for_path, write_temp_file
from .negotiation import Unsupported, ViaFilter, negotiate_format
from .postprocess import POST_PROCESSORS
from .registry import Registry

logger = get_logger('prover_service')

# communicate() slice while waiting for a child
POLL_SECONDS = 0.05
# the grace period is shared by the terminate, kill and drain waits
KILL_PHASES = 4


def kill_process_tree(pid: int, wait_seconds: float = 0.1) -> None:
    """Terminate ``pid`` and its descendants, escalating to SIGKILL after ``wait_seconds``."""
    try:
        parent = psutil.Process(pid)
    except psutil.NoSuchProcess:
        return
    try:
        procs = parent.children(recursive=True) + [parent]
    except psutil.NoSuchProcess:
        procs = [parent]
    for proc in procs:
        try:
            proc.terminate()
        except psutil.NoSuchProcess:
            pass
    _, alive = psutil.wait_procs(procs, timeout=wait_seconds)
    for proc in alive:
        try:
            proc.kill()
        except psutil.NoSuchProcess:
            pass
    psutil.wait_procs(alive, timeout=wait_seconds)
    # stragglers that left the tree but stayed in the session's group
    if hasattr(os, 'killpg'):
        try:
            os.killpg(pid, signal.SIGKILL)
        except (ProcessLookupError, PermissionError, OSError):
            pass


class ProverService:
    """
    Executes registry provers against conjecture files.

    Args:
        registry: immutable prover registry
        config: prover configuration (timeouts, axiom search paths)
    """

    def __init__(self, registry: Registry, config: Optional[ProverConfig] = None):
        self.registry = registry
        self.config = config or ProverConfig()

    def run(self, prover: Union[str, ProverSpec], conjecture_file: str, source_format: Optional[str] = None,
            timeout_ms: Optional[int] = None, prover_options: Sequence[str] = (),
            cancel_event: Optional[threading.Event] = None) -> RunReport:
        """
        Run one prover on one conjecture.

        Args:
            prover: registered prover name or spec
            conjecture_file: input path
            source_format: format of the input; guessed from the extension when None
            timeout_ms: wall-clock budget; the configured default when None
            prover_options: appended verbatim to the prover's command line
            cancel_event: set to abandon the run (reported as Timeout, "cancelled")

        Returns:
            RunReport; failures are reported, never raised
        """
        started = time.monotonic()
        timeout_ms = timeout_ms or self.config.default_timeout_ms
        spec = prover if isinstance(prover, ProverSpec) else self.registry.get(prover)
        source_format = source_format or format_for_path(conjecture_file)

        def error(detail: str) -> RunReport:
            return RunReport(prover=spec.name, status=ProverStatus.ERROR,
                             time_ms=_elapsed_ms(started), detail=detail)

        if source_format is None:
            return error(f'cannot tell the format of {conjecture_file}')
        plan = negotiate_format(spec, source_format)
        if isinstance(plan, Unsupported):
            return error(plan.reason)

        converted = None
        input_path = conjecture_file
        if isinstance(plan, ViaFilter):
            try:
                text = Path(conjecture_file).read_text(encoding='utf-8')
                fof = convert_text(text, plan.source, self.config.axiom_include,
                                   name=stem_for_path(conjecture_file))
            except (OgpError, OSError) as e:
                return error(f'{plan.filter_name}: {e}')
            converted = write_temp_file(fof, '.fof', self.config.temp_prefix)
            input_path = converted
            logger.debug(f"{plan.filter_name}: {conjecture_file} -> {converted}")

        logger.info(f"Starting {spec.name} on {conjecture_file} (timeout {timeout_ms} ms)")
        try:
            remaining = max(1, timeout_ms - _elapsed_ms(started))
            if spec.kind is ProverKind.NATIVE:
                report = self._run_native(spec, input_path, conjecture_file, remaining,
                                          prover_options, cancel_event, started)
            else:
                report = self._run_external(spec, input_path, remaining, prover_options,
                                            cancel_event, started)
        finally:
            remove_quietly(converted)
        logger.info(f"{spec.name} finished: {report.status.value} in {report.time_ms} ms")
        return report

    def _native_limits(self, options: Sequence[str], timeout_ms: int) -> SaturationLimits:
        values = {'--max-facts': SaturationLimits.max_facts, '--max-rounds': SaturationLimits.max_rounds}
        args = list(options)
        while args:
            flag = args.pop(0)
            if flag not in values or not args:
                raise OgpError(f"ddfa does not understand prover option {flag!r} "
                               f"(accepted: --max-facts N, --max-rounds N)")
            try:
                values[flag] = int(args.pop(0))
            except ValueError:
                raise OgpError(f'{flag} expects an integer') from None
        try:
            return SaturationLimits(max_facts=values['--max-facts'], max_rounds=values['--max-rounds'],
                                    timeout_ms=timeout_ms)
        except ValueError as e:
            raise OgpError(str(e)) from None

    def _run_native(self, spec: ProverSpec, input_path: str, original: str, timeout_ms: int,
                    options: Sequence[str], cancel_event: Optional[threading.Event],
                    started: float) -> RunReport:
        try:
            limits = self._native_limits(options, timeout_ms)
            doc = load_fof(input_path, self.config.axiom_search_paths + [str(Path(original).parent)])
        except (OgpError, OSError) as e:
            return RunReport(prover=spec.name, status=ProverStatus.ERROR,
                             time_ms=_elapsed_ms(started), detail=str(e))
        report = prove(doc, limits, cancel_event=cancel_event)
        return report.model_copy(update={'prover': spec.name, 'time_ms': _elapsed_ms(started)})

    def _build_command(self, spec: ProverSpec, input_path: str, timeout_ms: int,
                       options: Sequence[str]) -> List[str]:
        """Expand {input}/{timeout} in the template, then append prover options."""
        seconds = max(1, -(-timeout_ms // 1000))
        cmd = [spec.executable]
        for part in spec.arg_template:
            cmd.append(part.replace('{input}', input_path).replace('{timeout}', str(seconds)))
        cmd.extend(options)
        return cmd

    def _resolve_executable(self, executable: str) -> Optional[str]:
        if os.path.sep in executable or (os.path.altsep and os.path.altsep in executable):
            return executable if os.path.isfile(executable) else None
        return shutil.which(executable)

    def _run_external(self, spec: ProverSpec, input_path: str, timeout_ms: int,
                      options: Sequence[str], cancel_event: Optional[threading.Event],
                      started: float) -> RunReport:
        def report(status: ProverStatus, raw: str = '', detail: Optional[str] = None,
                   proof_path: Optional[str] = None) -> RunReport:
            return RunReport(prover=spec.name, status=status, time_ms=_elapsed_ms(started),
                             raw_output=raw, detail=detail, proof_path=proof_path)

        executable = self._resolve_executable(spec.executable)
        if executable is None:
            return report(ProverStatus.ERROR, detail=f'executable not found: {spec.executable}')
        cmd = self._build_command(spec, input_path, timeout_ms, options)
        cmd[0] = executable

        try:
            process = subprocess.Popen(cmd, stdout=subprocess.PIPE, stderr=subprocess.PIPE,
                                       stdin=subprocess.DEVNULL, text=True, errors='replace',
                                       start_new_session=True)
        except OSError as e:
            return report(ProverStatus.ERROR, detail=f'cannot start {spec.executable}: {e}')

        deadline = started + timeout_ms / 1000.0
        stopped_by = None
        stdout, stderr = '', ''
        while True:
            try:
                stdout, stderr = process.communicate(timeout=POLL_SECONDS)
                break
            except subprocess.TimeoutExpired:
                if cancel_event is not None and cancel_event.is_set():
                    stopped_by = 'cancelled'
                elif time.monotonic() >= deadline:
                    stopped_by = 'timeout'
                if stopped_by:
                    wait_seconds = self.config.grace_ms / 1000.0 / KILL_PHASES
                    kill_process_tree(process.pid, wait_seconds)
                    stdout, stderr = self._drain(process, wait_seconds)
                    break

        raw = stdout + (stderr if stderr else '')
        if stopped_by == 'cancelled':
            return report(ProverStatus.TIMEOUT, raw, 'cancelled')
        if stopped_by == 'timeout':
            return report(ProverStatus.TIMEOUT, raw, f'killed after {timeout_ms} ms')

        if spec.post_processor is None:
            if process.returncode != 0:
                return report(ProverStatus.ERROR, raw, f'exit status {process.returncode}')
            return report(ProverStatus.UNKNOWN, raw, 'no post-processor configured')

        result = POST_PROCESSORS[spec.post_processor](raw)
        status = result.status
        detail = None
        if result.time_ms is not None:
            detail = f'prover-reported time {result.time_ms} ms'
        if process.returncode != 0 and status is ProverStatus.UNKNOWN:
            status = ProverStatus.ERROR
            detail = f'exit status {process.returncode}'
        proof_path = result.proof_path if status is ProverStatus.PROVED else None
        return report(status, raw, detail, proof_path)

    @staticmethod
    def _drain(process: subprocess.Popen, wait_seconds: float) -> Tuple[str, str]:
        try:
            return process.communicate(timeout=wait_seconds)
        except subprocess.TimeoutExpired:
            process.kill()
            for stream in (process.stdout, process.stderr):
                if stream is not None:
                    stream.close()
            process.wait()
            return '', ''


def _elapsed_ms(started: float) -> int:
    return int((time.monotonic() - started) * 1000)
