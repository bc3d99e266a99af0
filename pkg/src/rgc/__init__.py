"""Ribbon graph complexes, necklaces and symplectic derivations."""

from .kernels import BACKEND
from .ribbon import (
    InvalidGraph,
    OrientedClass,
    RibbonGraph,
    automorphisms,
    bar_graph,
    bivalent_cycle,
    boundary_cycles,
    canonical_form,
    degree,
    genus,
    tadpole,
)
from .formats import format_graph, graph_from_json, graph_to_json, parse_graph

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "InvalidGraph",
    "OrientedClass",
    "RibbonGraph",
    "automorphisms",
    "bar_graph",
    "bivalent_cycle",
    "boundary_cycles",
    "canonical_form",
    "degree",
    "genus",
    "tadpole",
    "format_graph",
    "graph_from_json",
    "graph_to_json",
    "parse_graph",
]
