"""Certifying toolkit for Kuratowski families, genus and apex planarization."""

from .errors import BudgetExceeded, InvariantViolation
from .graph import ApicalPair, Graph, MinorModel, RootedGraph, SplitLog, SplitStep

__version__ = "0.1.0"

__all__ = [
    "ApicalPair",
    "BudgetExceeded",
    "Graph",
    "InvariantViolation",
    "MinorModel",
    "RootedGraph",
    "SplitLog",
    "SplitStep",
]
