"""Digraph path partitions, forbidden induced structures, constructive
certificate builders, and a small-order conjecture verification harness.

Modules:
    core         immutable digraph/graph types and basic algorithms
    oracles      exact exponential-time reference solvers
    forbidden    class recognizers and forbidden-structure finders
    constructive certified partition builders, one per structure theorem
    harness      exhaustive/randomized verification of both conjectures
    cli          file formats and the command-line interface
"""

from .core import Digraph, Graph
from .errors import DiperfectError

__all__ = ["Digraph", "Graph", "DiperfectError"]

__version__ = "0.1.0"
