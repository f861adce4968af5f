"""
Format negotiation between a conjecture's source format and a prover.
"""
from dataclasses import dataclass
from typing import Union

from ..filters.cli import DIALECT_FILTERS
from ..models import ProverSpec


@dataclass(frozen=True)
class Direct:
    pass


@dataclass(frozen=True)
class ViaFilter:
    source: str

    @property
    def filter_name(self) -> str:
        return DIALECT_FILTERS[self.source]


@dataclass(frozen=True)
class Unsupported:
    reason: str


ConversionPlan = Union[Direct, ViaFilter, Unsupported]


def negotiate_format(spec: ProverSpec, source_format: str) -> ConversionPlan:
    if source_format in spec.accepted_formats:
        return Direct()
    if source_format in DIALECT_FILTERS and 'fof' in spec.accepted_formats:
        return ViaFilter(source_format)
    accepted = ', '.join(spec.accepted_formats)
    if source_format in DIALECT_FILTERS:
        return Unsupported(f'{spec.name} accepts {accepted}; {DIALECT_FILTERS[source_format]} '
                           f'only converts to fof')
    return Unsupported(f'{spec.name} accepts {accepted}; no filter converts {source_format}')
