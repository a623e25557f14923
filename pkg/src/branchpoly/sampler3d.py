"""Uniform 3D branched polymers built from their projections.

A uniform labelled tree with independent U[0,1] edge weights gives the
x-coordinates (root-path sums from vertex 1).  The yz-coordinates are a
uniform planar G-polymer on the unit-interval graph of those x values, with
contact lengths chosen so that tangent pairs have spheroid distance exactly 1.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DomainError, StructureError
from .geometry import Edge, RootedTree, edge_key, tree_from_edges
from .invariants import BetaSpec, _beta_lookup, interval_graph
from .sampler2d import _rng, sample_gpolymer

CONTACT_SLACK = 1e-12  # x-gaps this close to 1 give near-zero contact lengths; redraw


@dataclass
class LabeledTree:
    n: int
    edges: List[Edge]
    prufer: Optional[Tuple[int, ...]] = None

    def __post_init__(self):
        self.edges = sorted(edge_key(a, b) for a, b in self.edges)
        if len(self.edges) != self.n - 1:
            raise StructureError("a tree on n vertices has n - 1 edges")
        if self.n > 1:
            tree_from_edges(self.edges, 1)  # raises unless the edges span 1..n

    def rooted(self, root: int = 1) -> RootedTree:
        if self.n == 1:
            return RootedTree(root, {})
        return tree_from_edges(self.edges, root)


def prufer_decode(seq: Sequence[int], n: int) -> LabeledTree:
    seq = [int(s) for s in seq]
    if n < 1 or len(seq) != max(0, n - 2):
        raise StructureError(f"a Prüfer code for n={n} has length {max(0, n - 2)}")
    if any(s < 1 or s > n for s in seq):
        raise StructureError("Prüfer entries must lie in 1..n")
    if n == 1:
        return LabeledTree(1, [], ())
    degree = [1] * (n + 1)
    for s in seq:
        degree[s] += 1
    leaves = [v for v in range(1, n + 1) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for s in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, s))
        degree[s] -= 1
        if degree[s] == 1:
            heapq.heappush(leaves, s)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return LabeledTree(n, edges, tuple(seq))


def prufer_encode(tree: LabeledTree) -> Tuple[int, ...]:
    n = tree.n
    adj: Dict[int, set] = {v: set() for v in range(1, n + 1)}
    for a, b in tree.edges:
        adj[a].add(b)
        adj[b].add(a)
    leaves = [v for v in adj if len(adj[v]) == 1]
    heapq.heapify(leaves)
    seq = []
    for _ in range(n - 2):
        leaf = heapq.heappop(leaves)
        (nb,) = adj[leaf]
        seq.append(nb)
        adj[nb].discard(leaf)
        adj[leaf].clear()
        if len(adj[nb]) == 1:
            heapq.heappush(leaves, nb)
    return tuple(seq)


def sample_labeled_tree(n: int, rng=None) -> LabeledTree:
    """Uniform labelled tree on 1..n (uniform Prüfer code)."""
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = _rng(rng)
    seq = rng.integers(1, n + 1, size=max(0, n - 2)).tolist()
    return prufer_decode(seq, n)


@dataclass
class ProjectionVector:
    x: Dict[int, float]
    u: Dict[Edge, float] = field(default_factory=dict)

    @property
    def b(self) -> np.ndarray:
        """Sorted x values; b[0] = 0."""
        return np.sort(np.fromiter(self.x.values(), float))

    def order(self) -> List[int]:
        return sorted(self.x, key=lambda v: (self.x[v], v))


def project_x(tree: LabeledTree, rng=None, u: Optional[Mapping[Edge, float]] = None) -> ProjectionVector:
    """x_v = sum of edge weights on the path from 1 to v; weights U[0,1] unless given."""
    rng = _rng(rng)
    if u is None:
        draws = rng.random(len(tree.edges))
        u = {e: float(w) for e, w in zip(tree.edges, draws)}
    else:
        u = {edge_key(*e): float(w) for e, w in u.items()}
    rt = tree.rooted(1)
    x = {1: 0.0}
    for v in rt.bfs_order()[1:]:
        p = rt.parent[v]
        x[v] = x[p] + u[edge_key(p, v)]
    return ProjectionVector(x, dict(u))


def _random_parents(n: int, rng: np.random.Generator, size: int) -> Tuple[np.ndarray, np.ndarray]:
    """Parent arrays (rooted at vertex 0) and BFS orders of ``size`` uniform trees."""
    parents = np.zeros((size, n), dtype=np.intp)
    orders = np.zeros((size, n), dtype=np.intp)
    for s in range(size):
        t = prufer_decode(rng.integers(1, n + 1, size=max(0, n - 2)).tolist(), n).rooted(1)
        bfs = t.bfs_order()
        orders[s] = np.asarray(bfs) - 1
        for c, p in t.parent.items():
            parents[s, c - 1] = p - 1
    return parents, orders


def b_vector_law(n: int, rng=None, size: Optional[int] = None) -> np.ndarray:
    """Direct draws of B: sorted root-path sums of a uniform tree with U[0,1] weights.

    Returns shape (n,) or (size, n).
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = _rng(rng)
    count = 1 if size is None else int(size)
    if n == 1:
        out = np.zeros((count, 1))
    else:
        parents, orders = _random_parents(n, rng, count)
        u = rng.random((count, n))
        x = np.zeros((count, n))
        rows = np.arange(count)
        for step in range(1, n):
            v = orders[:, step]
            x[rows, v] = x[rows, parents[rows, v]] + u[rows, v]
        out = np.sort(x, axis=1)
    return out[0] if size is None else out


def reversed_b(b: np.ndarray) -> np.ndarray:
    """<0, b_n - b_{n-1}, ..., b_n - b_1>, which has the same law as B."""
    b = np.asarray(b, dtype=float)
    return (b[..., -1:] - b)[..., ::-1]


def beta_from_axes(axes: Mapping[int, float]) -> Dict[Edge, float]:
    """Per-pair spheroid weights from per-label yz semi-axes ``w`` (x semi-axis 1/2).

    Two spheroids with yz semi-axes w_i, w_j touching side by side sit at yz
    distance w_i + w_j, so the pair weight is 1 / (w_i + w_j)^2.
    """
    labels = sorted(axes)
    return {
        edge_key(a, b): 1.0 / (axes[a] + axes[b]) ** 2 for i, a in enumerate(labels) for b in labels[i + 1 :]
    }


@dataclass
class Polymer3D:
    positions: np.ndarray  # row v-1 is the center of sphere v
    tree: RootedTree
    beta: Optional[Dict[Edge, float]] = None
    root: int = 1  # label of the x-lowest sphere the construction grew from
    seed: Optional[int] = None

    @property
    def n(self) -> int:
        return len(self.positions)

    @property
    def tangency_edges(self) -> List[Edge]:
        return sorted(self.tree.edges())

    def beta_of(self, i: int, j: int) -> float:
        if not self.beta:
            return 1.0
        return self.beta.get(edge_key(i, j), 1.0)

    def norms(self) -> Dict[Edge, float]:
        """Spheroid distance of every pair."""
        out = {}
        P = self.positions
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                d = P[j - 1] - P[i - 1]
                out[(i, j)] = math.sqrt(d[0] ** 2 + self.beta_of(i, j) * (d[1] ** 2 + d[2] ** 2))
        return out


def sample_polymer_3d(n: int, rng=None, beta: BetaSpec = None) -> Polymer3D:
    """Uniformly random 3D polymer of n spheres (spheroids when ``beta`` is given).

    ``beta`` may be a scalar, a mapping from pairs to weights, or a function
    of two labels; the default is 1 (unit-diameter spheres).
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    seed = rng if isinstance(rng, (int, np.integer)) else None
    rng = _rng(rng)
    look = _beta_lookup(beta)
    # the construction grows from its x-lowest sphere; that sphere's final
    # label is uniform, realised by swapping labels 1 and L
    L = int(rng.integers(1, n + 1))
    swap = {v: v for v in range(1, n + 1)}
    swap[1], swap[L] = L, 1

    def beta_c(i, j):
        return look(swap[i], swap[j])

    if n == 1:
        return Polymer3D(np.zeros((1, 3)), RootedTree(1, {}), None, 1, seed)
    tree = sample_labeled_tree(n, rng)
    while True:
        proj = project_x(tree, rng)
        xs = [proj.x[v] for v in range(1, n + 1)]
        if not _near_unit_gap(xs):
            break
    H = interval_graph(xs, beta_c)
    planar = sample_gpolymer(H, proj.order(), rng)
    P = np.zeros((n, 3))
    for v in range(1, n + 1):
        y, z = planar.position(v)
        P[swap[v] - 1] = (proj.x[v], y, z)
    P -= P[0]
    edges = [edge_key(swap[a], swap[b]) for a, b in planar.tree.edges()]
    out_beta = None
    if beta is not None:
        out_beta = {edge_key(i, j): float(look(i, j)) for i in range(1, n + 1) for j in range(i + 1, n + 1)}
    return Polymer3D(P, tree_from_edges(edges, 1), out_beta, L, seed)


def _near_unit_gap(xs: Sequence[float]) -> bool:
    a = np.sort(np.asarray(xs))
    d = a[None, :] - a[:, None]
    return bool((np.abs(np.abs(d) - 1.0) < CONTACT_SLACK).any())
