"""
Data models shared across provers, the registry and the repository wire format.
"""
import re
from datetime import datetime, timezone
from enum import Enum
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

IDENTIFIER_RE = re.compile(r'[A-Za-z][A-Za-z0-9_\-]*\Z')
PROBLEM_ID_RE = re.compile(r'[A-Z]{3}[0-9]{4}\Z')

FORMATS = ('fof', 'gcl', 'jgex', 'geogebra', 'coqam')


class ProverStatus(str, Enum):
    """Verdict vocabulary of the uniform prover contract."""
    PROVED = 'Proved'
    DISPROVED = 'Disproved'
    UNKNOWN = 'Unknown'
    TIMEOUT = 'Timeout'
    RESOURCE_OUT = 'ResourceOut'
    ERROR = 'Error'

    @property
    def definitive(self) -> bool:
        return self in (ProverStatus.PROVED, ProverStatus.DISPROVED)


class RunReport(BaseModel):
    """Outcome of one prover run."""
    model_config = ConfigDict(frozen=True)

    prover: str
    status: ProverStatus
    time_ms: int = Field(ge=0)
    proof_path: Optional[str] = None
    raw_output: str = ''
    detail: Optional[str] = None

    @model_validator(mode='after')
    def _proof_only_when_proved(self):
        if self.proof_path is not None and self.status is not ProverStatus.PROVED:
            raise ValueError('proof_path is only set for Proved reports')
        return self

    def to_json(self) -> str:
        return self.model_dump_json()

    @classmethod
    def from_json(cls, text: str) -> 'RunReport':
        return cls.model_validate_json(text)

    def contract_dict(self) -> Dict[str, Any]:
        """Fields printed by a native prover on standard output."""
        data: Dict[str, Any] = {'status': self.status.value, 'time_ms': self.time_ms}
        if self.proof_path is not None:
            data['proof_path'] = self.proof_path
        if self.detail is not None:
            data['detail'] = self.detail
        return data


class ProverKind(str, Enum):
    NATIVE = 'native'
    EXTERNAL = 'external'


class ProverSpec(BaseModel):
    """One registry entry; field aliases follow ``ogp-provers.json``."""
    model_config = ConfigDict(frozen=True, populate_by_name=True, extra='forbid')

    name: str
    kind: ProverKind = ProverKind.EXTERNAL
    accepted_formats: List[str] = Field(alias='formats', min_length=1)
    executable: Optional[str] = Field(default=None, alias='exec')
    arg_template: List[str] = Field(default_factory=lambda: ['{input}'], alias='args')
    post_processor: Optional[str] = Field(default=None, alias='post')
    default_for_extensions: List[str] = Field(default_factory=list, alias='default_for')

    @field_validator('name')
    @classmethod
    def _check_name(cls, value: str) -> str:
        if not IDENTIFIER_RE.match(value):
            raise ValueError(f'invalid prover name {value!r}')
        return value

    @field_validator('accepted_formats')
    @classmethod
    def _check_formats(cls, value: List[str]) -> List[str]:
        unknown = [f for f in value if f not in FORMATS]
        if unknown:
            raise ValueError(f"unknown format(s) {', '.join(unknown)}; expected one of {', '.join(FORMATS)}")
        return value

    @field_validator('default_for_extensions')
    @classmethod
    def _check_extensions(cls, value: List[str]) -> List[str]:
        for ext in value:
            if not ext.startswith('.'):
                raise ValueError(f'extension {ext!r} must start with "."')
        return value

    @model_validator(mode='after')
    def _check_kind(self):
        if self.kind is ProverKind.NATIVE and self.executable:
            raise ValueError('native provers have no executable')
        if self.kind is ProverKind.EXTERNAL and not self.executable:
            raise ValueError('external provers need an executable ("exec")')
        return self


class RegistryFile(BaseModel):
    model_config = ConfigDict(extra='forbid')

    provers: List[ProverSpec] = Field(default_factory=list)


REPOSITORY_FORMATS = ('fof', 'gcl', 'jgex', 'geogebra')


def _utcnow() -> datetime:
    return datetime.now(timezone.utc)


class ProblemRecord(BaseModel):
    """Metadata of one repository problem (``meta.json``); contents live in ``problem.<ext>``."""
    model_config = ConfigDict(frozen=True)

    id: str
    title: str = ''
    formats: List[str] = Field(min_length=1)
    created: datetime = Field(default_factory=_utcnow)
    modified: datetime = Field(default_factory=_utcnow)

    @field_validator('id')
    @classmethod
    def _check_id(cls, value: str) -> str:
        if not PROBLEM_ID_RE.match(value):
            raise ValueError(f'invalid problem id {value!r} (expected GEO followed by 4 digits)')
        return value

    @field_validator('formats')
    @classmethod
    def _check_formats(cls, value: List[str]) -> List[str]:
        unknown = [f for f in value if f not in REPOSITORY_FORMATS]
        if unknown:
            raise ValueError(f"unknown format(s) {', '.join(unknown)}")
        if 'fof' not in value:
            raise ValueError('every problem needs fof content')
        return value


class Manifest(BaseModel):
    ids: List[str] = Field(default_factory=list)


class QueryRequest(BaseModel):
    """One request line of the repository protocol."""
    model_config = ConfigDict(extra='forbid')

    op: Literal['get', 'list']
    id: Optional[str] = None
    format: str = 'fof'

    @model_validator(mode='after')
    def _check_get(self):
        if self.op == 'get' and not self.id:
            raise ValueError('get requires "id"')
        return self


class QueryResponse(BaseModel):
    """One response line of the repository protocol."""
    status: Literal['ok', 'error']
    id: Optional[str] = None
    format: Optional[str] = None
    content: Optional[str] = None
    ids: Optional[List[str]] = None
    code: Optional[str] = None
    message: Optional[str] = None

    @classmethod
    def problem(cls, problem_id: str, fmt: str, content: str) -> 'QueryResponse':
        return cls(status='ok', id=problem_id, format=fmt, content=content)

    @classmethod
    def listing(cls, ids: List[str]) -> 'QueryResponse':
        return cls(status='ok', ids=ids)

    @classmethod
    def failure(cls, code: str, message: str) -> 'QueryResponse':
        return cls(status='error', code=code, message=message)

    def to_line(self) -> bytes:
        return (self.model_dump_json(exclude_none=True) + '\n').encode('utf-8')


def describe_validation_error(error: ValidationError) -> str:
    """
    Flatten a pydantic error into field-level messages.

    Returns:
        str: e.g. ``provers[1].exec: external provers need an executable``
    """
    parts = []
    for item in error.errors():
        location = ''
        for key in item.get('loc', ()):
            if isinstance(key, int):
                location += f'[{key}]'
            else:
                location += f'.{key}' if location else str(key)
        message = item.get('msg', 'invalid value')
        if message.startswith('Value error, '):
            message = message[len('Value error, '):]
        parts.append(f'{location}: {message}' if location else message)
    return '; '.join(parts)
