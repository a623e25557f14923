"""Exact sampling of branched polymers and the invariant mu(G)."""

from .exceptions import CapacityError, DomainError, GeometryError, OrderingError, PolymerError, StructureError
from .geometry import RootedTree, WeightedGraph, constraint_gaps, forward_positions, reroot_and_orient
from .invariants import (
    gamma_product,
    interval_graph,
    mu,
    mu_bipartite,
    mu_kpartite,
    mu_safe_trees,
    mu_subgraph_sum,
    tutte_mu,
    tutte_polynomial,
)
from .sampler2d import Polymer2D, sample_crossing_inductive_tree, sample_gpolymer, sample_polymer_2d
from .sampler3d import Polymer3D, b_vector_law, prufer_decode, prufer_encode, sample_labeled_tree, sample_polymer_3d

__version__ = "0.1.0"
