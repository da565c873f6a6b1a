"""Exact computations in Fomin-Kirillov algebras and their graph subalgebras."""

__version__ = "0.1.0"

from .freealg import Element, parse_element  # noqa: E402
from .graphs import Graph, named_graph, parse_graph_spec  # noqa: E402
from .series import GradedSeries, formula  # noqa: E402

__all__ = ["Element", "Graph", "GradedSeries", "formula", "named_graph", "parse_element",
           "parse_graph_spec", "__version__"]
