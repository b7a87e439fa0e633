"""Exact computations in skew-symmetric cluster algebras of finite type.

Laurent arithmetic, seed mutation and exchange graphs, quiver
representations, quivers with potentials with their decorated
representations, and a verifier for the cluster-monomial basis.
"""

from .cluster import Quiver, enumerate_exchange_graph, is_finite_type, matrix_mutate, quiver_to_matrix
from .laurent import LaurentPoly
from .qp import QP, DecoratedRep, build_cluster_rep, x_of_rep

__version__ = "0.1.0"

__all__ = [
    "LaurentPoly",
    "Quiver",
    "QP",
    "DecoratedRep",
    "quiver_to_matrix",
    "matrix_mutate",
    "enumerate_exchange_graph",
    "is_finite_type",
    "build_cluster_rep",
    "x_of_rep",
]
