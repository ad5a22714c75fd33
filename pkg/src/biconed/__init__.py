"""h-vectors of biconed graphs and their multicomplexes of 2-edge-rooted forests."""

from .activity import (
    HVector,
    TuttePolynomial,
    activity,
    f_vector,
    h_from_activity,
    h_from_f,
    mobius_coinvariant,
    tutte_deletion_contraction,
    tutte_from_activity,
)
from .biconing import BiconedGraph, bicone, gen_family, reduced_graph, t_zero
from .forests import BirootedForest, is_2erf, phi, phi1, phi1_inv, phi2, phi2_inv, phi_inv, validate_2erf
from .graph import GraphError, Multigraph, count_spanning_trees_oracle, enumerate_spanning_trees
from .io import parse_graph
from .multicomplex import MonomialSet, enumerate_2erf, extend, is_downward_closed, is_pure, verify_stanley

__version__ = "0.1.0"

__all__ = [
    "BiconedGraph",
    "BirootedForest",
    "GraphError",
    "HVector",
    "MonomialSet",
    "Multigraph",
    "TuttePolynomial",
    "activity",
    "bicone",
    "count_spanning_trees_oracle",
    "enumerate_2erf",
    "enumerate_spanning_trees",
    "extend",
    "f_vector",
    "gen_family",
    "h_from_activity",
    "h_from_f",
    "is_2erf",
    "is_downward_closed",
    "is_pure",
    "mobius_coinvariant",
    "parse_graph",
    "phi",
    "phi1",
    "phi1_inv",
    "phi2",
    "phi2_inv",
    "phi_inv",
    "reduced_graph",
    "t_zero",
    "tutte_deletion_contraction",
    "tutte_from_activity",
    "validate_2erf",
    "verify_stanley",
]
