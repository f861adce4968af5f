"""
Native forward-chaining prover (deductive database method).
"""
from .facts import Fact, PREDICATES, canonicalize, orbit, symmetry_group, fact_from_atom, fact_to_atom
from .engine import (
    FactBase, ProofDag, Given, Derived, SaturationLimits, SaturationStats, SaturationResult, saturate,
)
from .proof import ProofStep, ReplayResult, extract_proof, serialize_proof, parse_proof, replay
from .prover import PROVER_NAME, prove

__all__ = [
    'Fact', 'PREDICATES', 'canonicalize', 'orbit', 'symmetry_group', 'fact_from_atom', 'fact_to_atom',
    'FactBase', 'ProofDag', 'Given', 'Derived', 'SaturationLimits', 'SaturationStats',
    'SaturationResult', 'saturate',
    'ProofStep', 'ReplayResult', 'extract_proof', 'serialize_proof', 'parse_proof', 'replay',
    'PROVER_NAME', 'prove',
]
