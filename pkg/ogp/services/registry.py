"""
Prover registry: the built-in native prover plus entries from ``ogp-provers.json``.
"""
import json
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Optional, Tuple, Union

from pydantic import ValidationError

from ..errors import RegistryError
from ..logger import get_logger
from ..models import ProverKind, ProverSpec, RegistryFile, describe_validation_error
from .postprocess import POST_PROCESSORS

logger = get_logger('registry')

NATIVE_PROVERS = ('ddfa',)
DDFA_DEFAULT_EXTENSIONS = ('.gcl', '.jgex', '.ggb.xml')


def builtin_ddfa(claimed: Iterable[str] = ()) -> ProverSpec:
    """The native prover spec, defaulting every dialect extension nobody else claims."""
    claimed = set(claimed)
    return ProverSpec(name='ddfa', kind=ProverKind.NATIVE, accepted_formats=['fof'],
                      arg_template=[], default_for_extensions=[e for e in DDFA_DEFAULT_EXTENSIONS
                                                               if e not in claimed])


class Registry:
    """Immutable, ordered collection of ProverSpec keyed by name."""

    def __init__(self, specs: Iterable[ProverSpec]):
        self._specs: Tuple[ProverSpec, ...] = tuple(specs)
        self._by_name: Dict[str, ProverSpec] = {}
        self._defaults: Dict[str, str] = {}
        for spec in self._specs:
            if spec.name in self._by_name:
                raise RegistryError(f'duplicate prover name {spec.name!r}')
            self._by_name[spec.name] = spec
            for ext in spec.default_for_extensions:
                if ext in self._defaults:
                    raise RegistryError(f'extension {ext} is the default of both '
                                        f'{self._defaults[ext]} and {spec.name}')
                self._defaults[ext] = spec.name

    def __iter__(self) -> Iterator[ProverSpec]:
        return iter(self._specs)

    def __len__(self) -> int:
        return len(self._specs)

    def __contains__(self, name: str) -> bool:
        return name in self._by_name

    def get(self, name: str) -> ProverSpec:
        try:
            return self._by_name[name]
        except KeyError:
            raise RegistryError(f"prover {name!r} is not registered "
                                f"(available: {', '.join(self.names())})") from None

    def names(self) -> List[str]:
        return [spec.name for spec in self._specs]

    def externals(self) -> List[str]:
        return [spec.name for spec in self._specs if spec.kind is ProverKind.EXTERNAL]

    def default_for(self, extension: str) -> Optional[str]:
        return self._defaults.get(extension)

    @property
    def extension_defaults(self) -> Dict[str, str]:
        return dict(self._defaults)


def build_registry(configured: Iterable[ProverSpec]) -> Registry:
    """
    Combine configured specs with the built-in ddfa.

    Args:
        configured: entries read from the registry file, in file order

    Returns:
        Registry with ddfa first
    """
    configured = list(configured)
    for spec in configured:
        if spec.kind is ProverKind.NATIVE and spec.name not in NATIVE_PROVERS:
            raise RegistryError(f'no native prover named {spec.name!r}')
        if spec.post_processor is not None and spec.post_processor not in POST_PROCESSORS:
            raise RegistryError(f'{spec.name}: unknown post-processor {spec.post_processor!r} '
                                f"(known: {', '.join(POST_PROCESSORS)})")

    # duplicates among configured entries are errors; the built-in yields
    Registry(configured)
    names = {spec.name for spec in configured}
    if 'ddfa' in names:
        return Registry(configured)
    claimed = [ext for spec in configured for ext in spec.default_for_extensions]
    return Registry([builtin_ddfa(claimed)] + configured)


def load_registry(config_path: Optional[Union[str, Path]] = None) -> Registry:
    """
    Read ``ogp-provers.json``.

    Args:
        config_path: registry file; None gives the built-in registry

    Returns:
        Registry; ddfa is always present
    """
    if config_path is None:
        return build_registry([])
    path = Path(config_path)
    try:
        data = json.loads(path.read_text(encoding='utf-8'))
    except FileNotFoundError:
        raise RegistryError(f'prover registry not found: {path}') from None
    except (OSError, ValueError) as e:
        raise RegistryError(f'{path}: {e}') from None
    try:
        parsed = RegistryFile.model_validate(data)
    except ValidationError as e:
        raise RegistryError(f'{path}: {describe_validation_error(e)}') from None
    registry = build_registry(parsed.provers)
    logger.debug(f"Loaded registry {path}: {', '.join(registry.names())}")
    return registry
