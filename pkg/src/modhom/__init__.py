"""Counting graph homomorphisms modulo a prime for square-free targets."""

from .automorphisms import enumerate_automorphisms, reduce_to_hstar
from .gadgets import HardnessGadget, LabelledGraph, verify_hardness_gadget
from .graph import BipartiteInstance, Graph, parse_graph, serialize_graph
from .homs import count_homs, count_homs_mod
from .pipeline import build_hardness_gadget, classify
from .reduction import build_reduction_graph, verify_reduction
from .residue import Residue

__all__ = [
    "BipartiteInstance",
    "Graph",
    "HardnessGadget",
    "LabelledGraph",
    "Residue",
    "build_hardness_gadget",
    "build_reduction_graph",
    "classify",
    "count_homs",
    "count_homs_mod",
    "enumerate_automorphisms",
    "parse_graph",
    "reduce_to_hstar",
    "serialize_graph",
    "verify_hardness_gadget",
    "verify_reduction",
]
