"""Loose cycles in uniform hypergraphs: detection, partite decompositions and counting."""

from .cycles import CycleWitness, IncrementalDetector, contains_loose_cycle, iter_loose_cycles, template
from .decomposition import Decomposition, decompose
from .errors import CaptureFailure, PreconditionError, VerificationError, WorkBoundExceeded
from .hypergraph import EdgeColoring, Hypergraph, RPartition, extend

__all__ = [
    "CaptureFailure", "CycleWitness", "Decomposition", "EdgeColoring", "Hypergraph",
    "IncrementalDetector", "PreconditionError", "RPartition", "VerificationError",
    "WorkBoundExceeded", "contains_loose_cycle", "decompose", "extend", "iter_loose_cycles",
    "template",
]
