"""Toric ideals of signed graphs: walks, Graver bases and complete-intersection tests."""

from .binomial import Binomial
from .classify import (
    algorithm_ci_graph,
    classify_cio,
    classify_cis,
    exhaustive_cis_check,
    is_ring_graph,
    necessary_conditions_ci,
)
from .graph import GraphError, ParseError, SignedGraph, from_edges, parse_signed_graph
from .groebner import BudgetExceeded, buchberger
from .ideal import graver_basis, is_complete_intersection, r_invariant, toric_ideal_basis
from .lattice import kernel_to_even_walks, rank_formula
from .walks import Walk, binomial_of_walk, enumerate_primitive_walks, mu

__version__ = "0.1.0"

__all__ = [
    "Binomial",
    "BudgetExceeded",
    "GraphError",
    "ParseError",
    "SignedGraph",
    "Walk",
    "algorithm_ci_graph",
    "binomial_of_walk",
    "buchberger",
    "classify_cio",
    "classify_cis",
    "enumerate_primitive_walks",
    "exhaustive_cis_check",
    "from_edges",
    "graver_basis",
    "is_complete_intersection",
    "is_ring_graph",
    "kernel_to_even_walks",
    "mu",
    "necessary_conditions_ci",
    "parse_signed_graph",
    "r_invariant",
    "rank_formula",
    "toric_ideal_basis",
]
