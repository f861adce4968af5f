"""
Canonical ground facts.

Each predicate carries a permutation group over its argument positions;
a fact is stored as the lexicographically least member of its orbit, so
symmetric variants (coll(c,a,b) / coll(a,b,c)) are one database entry and
no symmetry axioms are needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, Sequence, Tuple

from ..errors import DdfaError
from ..fof.syntax import Atom, Function

Permutation = Tuple[int, ...]


@dataclass(frozen=True)
class PredicateSpec:
    name: str
    arity: int
    generators: Tuple[Permutation, ...] = ()


PREDICATES: Dict[str, PredicateSpec] = {
    spec.name: spec for spec in (
        # full permutation of three points
        PredicateSpec('coll', 3, ((1, 0, 2), (0, 2, 1))),
        # midp(M,A,B): swap A,B
        PredicateSpec('midp', 3, ((0, 2, 1),)),
        # swap within each pair, swap the pairs
        PredicateSpec('para', 4, ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1))),
        PredicateSpec('cong', 4, ((1, 0, 2, 3), (0, 1, 3, 2), (2, 3, 0, 1))),
        # within each pair only
        PredicateSpec('perp', 4, ((1, 0, 2, 3), (0, 1, 3, 2))),
        # swap the two angle blocks
        PredicateSpec('eqangle', 8, ((4, 5, 6, 7, 0, 1, 2, 3),)),
        PredicateSpec('cyclic', 4, ((1, 0, 2, 3), (1, 2, 3, 0))),
        # circle(O,A,B,C): any order of A,B,C
        PredicateSpec('circle', 4, ((0, 2, 1, 3), (0, 1, 3, 2))),
    )
}


def predicate_spec(predicate: str, arity: int) -> PredicateSpec:
    spec = PREDICATES.get(predicate)
    if spec is None:
        raise DdfaError(f'unknown predicate {predicate}/{arity}')
    if spec.arity != arity:
        raise DdfaError(f'{predicate} takes {spec.arity} arguments, got {arity}')
    return spec


@lru_cache(maxsize=None)
def symmetry_group(predicate: str) -> Tuple[Permutation, ...]:
    """All group elements generated by the predicate's generators, identity first."""
    spec = PREDICATES[predicate]
    identity = tuple(range(spec.arity))
    elements = [identity]
    seen = {identity}
    frontier = [identity]
    while frontier:
        following = []
        for perm in frontier:
            for generator in spec.generators:
                composed = tuple(perm[generator[i]] for i in range(spec.arity))
                if composed not in seen:
                    seen.add(composed)
                    elements.append(composed)
                    following.append(composed)
        frontier = following
    return tuple(elements)


def apply_permutation(perm: Permutation, args: Sequence[str]) -> Tuple[str, ...]:
    return tuple(args[i] for i in perm)


def orbit(predicate: str, args: Sequence[str]) -> Tuple[Tuple[str, ...], ...]:
    """Distinct argument tuples equivalent to ``args``, in group order."""
    seen = {}
    for perm in symmetry_group(predicate):
        seen.setdefault(apply_permutation(perm, args), None)
    return tuple(seen)


@dataclass(frozen=True)
class Fact:
    predicate: str
    args: Tuple[str, ...]
    canonical: bool = field(default=False, compare=False)

    def __str__(self) -> str:
        return f"{self.predicate}({','.join(self.args)})"


def canonicalize(predicate: str, args: Sequence[str]) -> Fact:
    """
    Canonical representative of a ground atom.

    Args:
        predicate: predicate symbol from PREDICATES
        args: constant symbols

    Returns:
        Fact whose args are the least tuple of the orbit
    """
    predicate_spec(predicate, len(args))
    return Fact(predicate, min(orbit(predicate, tuple(args))), canonical=True)


def fact_from_atom(atom: Atom) -> Fact:
    constants = []
    for arg in atom.args:
        if not isinstance(arg, Function) or arg.args:
            raise DdfaError(f'{atom} is not a ground atom over constants')
        constants.append(arg.symbol)
    return canonicalize(atom.predicate, constants)


def fact_to_atom(fact: Fact) -> Atom:
    return Atom(fact.predicate, tuple(Function(a) for a in fact.args))
