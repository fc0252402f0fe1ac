"""Exact computation of the subgraph component polynomial ``Q(G; x, y)``.

``Q(G; x, y)`` sums ``x^|A| y^k(G[A])`` over all vertex subsets ``A``, where
``k`` is the number of connected components of the induced subgraph.
"""

from .core import (
    QResult,
    closed_form,
    compute_q,
    q_brute_force,
    q_join,
    q_polynomial,
    q_recursive,
    q_split,
    universal_recursion,
)
from .errors import BoundsError, InconsistencyError, ParseError, QPolyError
from .graph import Graph, MultiGraph
from .io import parse, parse_edge_list, parse_graph6, to_graph6
from .poly import BiPoly, TriPoly, UniPoly
from .treewidth import q_treewidth

__version__ = "0.1.0"

__all__ = [
    "BiPoly",
    "BoundsError",
    "Graph",
    "InconsistencyError",
    "MultiGraph",
    "ParseError",
    "QPolyError",
    "QResult",
    "TriPoly",
    "UniPoly",
    "closed_form",
    "compute_q",
    "parse",
    "parse_edge_list",
    "parse_graph6",
    "q_brute_force",
    "q_join",
    "q_polynomial",
    "q_recursive",
    "q_split",
    "q_treewidth",
    "to_graph6",
    "universal_recursion",
]
