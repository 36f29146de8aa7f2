"""Discrete configuration spaces of graphs and the braid groups they carry."""

__version__ = "0.1.0"

from .errors import EnumerationCapExceeded, GbgError, InvalidInputError, UnsupportedError
from .graph_core import Graph, Subgraph

__all__ = [
    "EnumerationCapExceeded",
    "GbgError",
    "Graph",
    "InvalidInputError",
    "Subgraph",
    "UnsupportedError",
    "__version__",
]
