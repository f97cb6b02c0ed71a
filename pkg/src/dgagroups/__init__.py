"""Finite groups as automorphism groups of rational DGAs built from graphs."""

from .algebra import Element, ExactRational, GeneratorMap, GeneratorTable
from .encoder import DGAPresentation, certify, encode_graph
from .graph import Graph, Permutation, automorphisms
from .groups import GroupTable, is_isomorphic, realize, verify_realization
from .rigidity import RigidityResult, RigiditySolution, solve_rigidity

__version__ = "0.1.0"

__all__ = [
    "Element", "ExactRational", "GeneratorMap", "GeneratorTable", "DGAPresentation",
    "certify", "encode_graph", "Graph", "Permutation", "automorphisms", "GroupTable",
    "is_isomorphic", "realize", "verify_realization", "RigidityResult",
    "RigiditySolution", "solve_rigidity",
]
