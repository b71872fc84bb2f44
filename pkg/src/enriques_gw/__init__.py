"""Exact curve-counting invariants of the Enriques surface and the
Enriques Calabi-Yau threefold in genus at most 2.

The heart of the package is a lattice recursion for the genus-1
invariants of the Enriques surface, together with closed formulas that
express every genus-0, genus-1 and genus-2 invariant of the threefold
through it.  Everything is computed in exact rational arithmetic.
"""

from .gw_engine import (
    CurveClassQ,
    enriques_genus1,
    enriques_genus2_lambda1,
    invariant_record,
    n1_fiber,
    n2_fiber,
    n_invariant,
)
from .lattice import (
    LatticeVector,
    divisibility,
    enumerate_decompositions,
    is_positive,
    pair,
    square,
)

__version__ = "0.1.0"

__all__ = [
    "CurveClassQ",
    "LatticeVector",
    "divisibility",
    "enriques_genus1",
    "enriques_genus2_lambda1",
    "enumerate_decompositions",
    "invariant_record",
    "is_positive",
    "n1_fiber",
    "n2_fiber",
    "n_invariant",
    "pair",
    "square",
    "__version__",
]
