"""
Include resolution: flattens ``include('...')`` directives into one document.
"""
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from ..errors import IncludeError
from ..logger import get_logger
from .parser import parse_fof
from .syntax import AnnotatedFormula, FofDocument

logger = get_logger('fof.includes')

PathLike = Union[str, Path]


def locate_include(include: str, search_paths: Iterable[PathLike],
                   base_dir: Optional[PathLike] = None) -> Path:
    """Search roots in order, then the including file's directory."""
    roots = [Path(p) for p in search_paths]
    if base_dir is not None:
        roots.append(Path(base_dir))
    for root in roots:
        candidate = root / include
        if candidate.is_file():
            return candidate
    searched = ', '.join(str(r) for r in roots) or '(no search paths)'
    raise IncludeError(f"include '{include}' not found; searched: {searched}")


def _resolve(doc: FofDocument, search_paths: Sequence[PathLike], base_dir: Optional[PathLike],
             stack: Tuple[Path, ...]) -> List[Tuple[AnnotatedFormula, str]]:
    collected: List[Tuple[AnnotatedFormula, str]] = []
    for include in doc.includes:
        path = locate_include(include, search_paths, base_dir)
        key = path.resolve()
        if key in stack:
            chain = ' -> '.join(str(p) for p in stack + (key,))
            raise IncludeError(f'include cycle: {chain}')
        try:
            text = path.read_text(encoding='utf-8')
        except OSError as e:
            raise IncludeError(f"cannot read include '{include}' ({path}): {e}") from e
        included = parse_fof(text, source=str(path), allow_conjecture=False)
        logger.debug(f"Included {path} ({len(included.formulas)} formulas)")
        collected.extend(_resolve(included, search_paths, path.parent, stack + (key,)))
    origin = str(stack[-1]) if stack else '<document>'
    collected.extend((f, origin) for f in doc.formulas)
    return collected


def resolve_includes(doc: FofDocument, search_paths: Sequence[PathLike],
                     base_dir: Optional[PathLike] = None,
                     source: Optional[PathLike] = None) -> FofDocument:
    """
    Flatten includes, prepending included formulas in include order.

    Args:
        doc: parsed document
        search_paths: roots searched before ``base_dir``
        base_dir: directory of the including file
        source: path of ``doc`` itself, for cycle detection

    Returns:
        document with no includes; ``doc`` itself when it had none
    """
    if not doc.includes:
        return doc

    stack: Tuple[Path, ...] = (Path(source).resolve(),) if source is not None else ()
    collected = _resolve(doc, search_paths, base_dir, stack)

    origins = {}
    for annotated, origin in collected:
        if annotated.name in origins:
            raise IncludeError(
                f"formula name collision: {annotated.name!r} in {origins[annotated.name]} and {origin}")
        origins[annotated.name] = origin

    return FofDocument((), tuple(f for f, _ in collected))


def load_fof(path: PathLike, search_paths: Sequence[PathLike] = (), resolve: bool = True) -> FofDocument:
    """Read a ``.fof``/``.ax`` file and (by default) flatten its includes."""
    path = Path(path)
    text = path.read_text(encoding='utf-8')
    doc = parse_fof(text, source=str(path), allow_conjecture=path.suffix != '.ax')
    if resolve:
        doc = resolve_includes(doc, search_paths, path.parent, source=path)
    return doc
