"""
GeoGebra XML subset (``.ggb.xml``, the ``geogebra.xml`` of an unzipped worksheet).

Inside ``<construction>``: ``<element type="point" label="A"/>`` declares a
free point; ``<command name="...">`` with ``<input a0=.../>`` and
``<output a0=.../>`` builds one:

    Midpoint      a0, a1
    ClosestPoint  a0 = point, a1 a2 = line through two points (foot)
    Intersect     a0 a1 = first line, a2 a3 = second line
    Circumcenter  a0 a1 a2
    Prove         a0 = AreCollinear[..] | AreParallel[..] | ArePerpendicular[..]
                       | AreCongruent[..] | AreConcyclic[..]

Elements whose label is a command output are skipped; any other element
type or command name is rejected.
"""
import re
import xml.etree.ElementTree as ET
from typing import List

from ..errors import ConjectureSyntaxError, UnsupportedConstructError
from .model import ConjectureBuilder, GeoConjecture, StepKind

COMMANDS = {
    'Midpoint': StepKind.MIDPOINT,
    'ClosestPoint': StepKind.FOOT,
    'Intersect': StepKind.INTERSECT_LINES,
    'Circumcenter': StepKind.CIRCLE_CENTER3,
}

GOAL_WRAPPERS = {
    'AreCollinear': 'collinear',
    'AreParallel': 'parallel',
    'ArePerpendicular': 'perpendicular',
    'AreCongruent': 'congruent',
    'AreConcyclic': 'cyclic',
}

_GOAL_RE = re.compile(r'^\s*([A-Za-z]+)\s*\[(.*)\]\s*$')


def _positional(node: ET.Element) -> List[str]:
    """a0, a1, ... attribute values in index order."""
    if node is None:
        return []
    indexed = []
    for key, value in node.attrib.items():
        m = re.fullmatch(r'a(\d+)', key)
        if m:
            indexed.append((int(m.group(1)), value.strip()))
    indexed.sort()
    if [i for i, _ in indexed] != list(range(len(indexed))):
        raise ConjectureSyntaxError(f'<{node.tag}> arguments must be a0, a1, ... without gaps')
    return [value for _, value in indexed]


def _construction(root: ET.Element) -> ET.Element:
    if root.tag == 'construction':
        return root
    if root.tag == 'geogebra':
        found = root.find('construction')
        if found is not None:
            return found
        raise ConjectureSyntaxError('<geogebra> has no <construction>')
    raise ConjectureSyntaxError(f'unexpected root element <{root.tag}>')


def _goal(builder: ConjectureBuilder, expression: str) -> None:
    m = _GOAL_RE.match(expression)
    if m is None:
        raise ConjectureSyntaxError(f'malformed Prove argument {expression!r}')
    wrapper, inner = m.groups()
    predicate = GOAL_WRAPPERS.get(wrapper)
    if predicate is None:
        raise UnsupportedConstructError(f'unsupported Prove predicate {wrapper}')
    args = [a.strip() for a in inner.split(',')] if inner.strip() else []
    builder.set_goal(predicate, args)


def parse_ggb_xml(text: str, name: str = 'conjecture') -> GeoConjecture:
    """
    Parse a GeoGebra construction into a GeoConjecture.

    Args:
        text: XML source
        name: conjecture name

    Returns:
        GeoConjecture
    """
    try:
        root = ET.fromstring(text)
    except ET.ParseError as e:
        line = e.position[0] if getattr(e, 'position', None) else None
        raise ConjectureSyntaxError(f'malformed XML: {e}', line) from None

    construction = _construction(root)
    outputs = set()
    for command in construction.iter('command'):
        outputs.update(_positional(command.find('output')))

    builder = ConjectureBuilder(name)
    for node in construction:
        if node.tag == 'element':
            label = node.get('label', '').strip()
            if not label:
                raise ConjectureSyntaxError('<element> without a label')
            if label in outputs:
                continue
            if node.get('type') != 'point':
                raise UnsupportedConstructError(f"unsupported element type {node.get('type')!r} ({label})")
            builder.free_point(label)
        elif node.tag == 'command':
            command = node.get('name', '')
            inputs = _positional(node.find('input'))
            if command == 'Prove':
                if len(inputs) != 1:
                    raise ConjectureSyntaxError('Prove takes exactly one argument (a0)')
                _goal(builder, inputs[0])
            elif command in COMMANDS:
                outs = _positional(node.find('output'))
                if len(outs) != 1:
                    raise ConjectureSyntaxError(f'{command} must have exactly one output')
                builder.add_step(COMMANDS[command], outs[0], inputs)
            else:
                raise UnsupportedConstructError(f'unknown command {command!r}')
        else:
            raise UnsupportedConstructError(f'unsupported construction item <{node.tag}>')
    return builder.build()
