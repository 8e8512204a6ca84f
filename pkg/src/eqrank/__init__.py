"""Equivalence-class ranking of network nodes.

Nodes are sorted into classes by non-dominated sorting over four centrality
indicators; other rankings are scored by how well they cover those classes.
"""

# ruff: noqa: F401
from . import analysis, centrality, coverage, datasets, graph_io, link_analysis, pareto
from .errors import (
    DisconnectedGraphError,
    EqrankError,
    GraphParseError,
    InputError,
    PreconditionError,
    SequenceMismatchError,
)

__version__ = "0.1.0"
