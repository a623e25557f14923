"""Tree kinematics and contact constraints shared by the planar and 3D samplers.

A configuration is described the way a linkage is: a spanning tree rooted at
one vertex, an absolute angle for every tree edge (measured counterclockwise
from the positive x-axis, pointing from parent to child) and a length for every
tree edge.  Lengths are affine in a growth parameter ``t`` so that a growing
vertex can be handled without special cases.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Dict, Iterable, Mapping, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DomainError, StructureError

Edge = Tuple[int, int]
TAU = 2.0 * math.pi

# absolute tolerance on gaps for O(1) contact lengths
GAP_TOL = 1e-9


def edge_key(i: int, j: int) -> Edge:
    """Canonical (sorted) key of an undirected edge."""
    if i == j:
        raise StructureError(f"self-loop at vertex {i}")
    return (i, j) if i < j else (j, i)


def gap_tolerance(required, scale: float = 1.0):
    """Tolerance on a gap whose contact length is ``required``.

    Absolute ``GAP_TOL`` for unit-scale contacts, relative for tiny ones so
    that geometrically shrinking radii stay resolvable.  ``scale`` bounds the
    size of the coordinates; far from the origin rounding alone is a few
    hundred ulps of it, so the floor grows with it.
    """
    return GAP_TOL * np.minimum(1.0, np.abs(required)) + 1e-13 * max(1.0, scale)


@dataclass
class RootedTree:
    """Spanning tree rooted at ``root`` with parent pointers.

    ``parent`` maps every non-root vertex to its parent.  Edges point away
    from the root.
    """

    root: int
    parent: Dict[int, int] = field(default_factory=dict)

    def __post_init__(self):
        if self.root in self.parent:
            raise StructureError("root cannot have a parent")
        # walking up from every vertex must reach the root
        for v in self.parent:
            seen = {v}
            u = v
            while u != self.root:
                if u not in self.parent:
                    raise StructureError(f"vertex {u} has no path to the root")
                u = self.parent[u]
                if u in seen:
                    raise StructureError("parent pointers contain a cycle")
                seen.add(u)

    @property
    def n(self) -> int:
        return len(self.parent) + 1

    @property
    def vertices(self) -> list:
        return [self.root, *self.parent]

    def edges(self) -> list:
        return [edge_key(p, c) for c, p in self.parent.items()]

    def children(self) -> Dict[int, list]:
        out = {v: [] for v in self.vertices}
        for c, p in self.parent.items():
            out[p].append(c)
        return out

    def bfs_order(self) -> list:
        """Vertices ordered so that each parent precedes its children."""
        ch = self.children()
        order = [self.root]
        for v in order:
            order.extend(sorted(ch[v]))
        return order

    def path_to_root(self, v: int) -> list:
        out = [v]
        while out[-1] != self.root:
            out.append(self.parent[out[-1]])
        return out

    def path(self, a: int, b: int) -> list:
        """Vertex sequence of the tree path from ``a`` to ``b``."""
        pa = self.path_to_root(a)
        pb = self.path_to_root(b)
        on_a = {v: i for i, v in enumerate(pa)}
        for j, v in enumerate(pb):
            if v in on_a:
                return pa[: on_a[v] + 1] + pb[:j][::-1]
        raise StructureError("vertices are in different trees")  # pragma: no cover


@dataclass
class WeightedGraph:
    """Simple undirected graph with a required contact length per edge.

    ``lengths`` is keyed by sorted vertex pairs.  ``beta`` optionally carries
    the spheroid weight of each pair (missing pairs mean 1).
    """

    vertices: Tuple[int, ...]
    lengths: Dict[Edge, float]
    beta: Dict[Edge, float] = field(default_factory=dict)

    def __post_init__(self):
        self.vertices = tuple(self.vertices)
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise StructureError("duplicate vertex labels")
        clean = {}
        for (i, j), r in self.lengths.items():
            if i not in vs or j not in vs:
                raise StructureError(f"edge ({i}, {j}) uses an unknown vertex")
            if not r >= 0:
                raise StructureError(f"edge ({i}, {j}) has invalid length {r}")
            clean[edge_key(i, j)] = float(r)
        self.lengths = clean
        self.beta = {edge_key(*e): float(b) for e, b in self.beta.items()}
        for e, b in self.beta.items():
            if not b > 0:
                raise StructureError(f"beta on {e} must be positive")
        self._adj = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, length: float = 1.0) -> "WeightedGraph":
        """Graph on 1..n; edges are ``(i, j)`` or ``(i, j, r)`` or ``(i, j, r, beta)``."""
        lengths, beta = {}, {}
        for e in edges:
            i, j = int(e[0]), int(e[1])
            key = edge_key(i, j)
            if key in lengths:
                raise StructureError(f"repeated edge {key}")
            lengths[key] = float(e[2]) if len(e) > 2 else length
            if len(e) > 3:
                beta[key] = float(e[3])
        return cls(tuple(range(1, n + 1)), lengths, beta)

    @classmethod
    def complete(cls, n: int, length: float = 1.0) -> "WeightedGraph":
        return cls.from_edges(n, [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)], length)

    @classmethod
    def disks(cls, radii: Sequence[float]) -> "WeightedGraph":
        """Complete graph whose contact lengths are sums of disk radii."""
        n = len(radii)
        return cls.from_edges(
            n, [(i, j, radii[i - 1] + radii[j - 1]) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
        )

    @classmethod
    def cycle(cls, m: int, length: float = 1.0) -> "WeightedGraph":
        if m < 3:
            raise DomainError("a cycle needs at least 3 vertices")
        return cls.from_edges(m, [(i, i % m + 1) for i in range(1, m + 1)], length)

    @classmethod
    def path(cls, m: int, length: float = 1.0) -> "WeightedGraph":
        return cls.from_edges(m, [(i, i + 1) for i in range(1, m)], length)

    @classmethod
    def complete_multipartite(cls, sizes: Sequence[int], length: float = 1.0) -> "WeightedGraph":
        part, v = {}, 1
        for p, s in enumerate(sizes):
            for _ in range(s):
                part[v] = p
                v += 1
        n = v - 1
        edges = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1) if part[i] != part[j]]
        return cls.from_edges(n, edges, length)

    # -- queries ------------------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edges(self) -> list:
        return sorted(self.lengths)

    @property
    def m(self) -> int:
        return len(self.lengths)

    def adjacency(self) -> Dict[int, set]:
        if self._adj is None:
            adj = {v: set() for v in self.vertices}
            for i, j in self.lengths:
                adj[i].add(j)
                adj[j].add(i)
            self._adj = adj
        return self._adj

    def has_edge(self, i: int, j: int) -> bool:
        return i != j and edge_key(i, j) in self.lengths

    def length(self, i: int, j: int) -> float:
        return self.lengths[edge_key(i, j)]

    def beta_of(self, i: int, j: int) -> float:
        return self.beta.get(edge_key(i, j), 1.0)

    def is_connected(self, subset: Optional[Iterable[int]] = None) -> bool:
        vs = set(self.vertices if subset is None else subset)
        if not vs:
            return True
        adj = self.adjacency()
        start = next(iter(vs))
        seen = {start}
        todo = [start]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w in vs and w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(vs)

    def induced(self, subset: Iterable[int]) -> "WeightedGraph":
        ks = set(subset)
        keep = [v for v in self.vertices if v in ks]
        lengths = {e: r for e, r in self.lengths.items() if e[0] in ks and e[1] in ks}
        beta = {e: b for e, b in self.beta.items() if e in lengths}
        return WeightedGraph(tuple(keep), lengths, beta)

    def key(self) -> tuple:
        """Hashable structural key (vertices and edges, no lengths)."""
        return (self.vertices, tuple(self.edges))


# ---------------------------------------------------------------------------
# kinematics


def unit(theta: float) -> np.ndarray:
    return np.array([math.cos(theta), math.sin(theta)])


def forward_positions(
    tree: RootedTree,
    angles: Mapping[int, float],
    lengths: Mapping[Edge, Tuple[float, float]],
    t: float = 1.0,
    origin=(0.0, 0.0),
) -> Dict[int, np.ndarray]:
    """Planar positions of every tree vertex.

    ``angles[v]`` is the absolute angle of the edge from ``parent(v)`` to
    ``v``; ``lengths[edge]`` is ``(base, coeff)`` so the edge has length
    ``base + coeff * t``.  The root sits at ``origin``.
    """
    pos = {tree.root: np.asarray(origin, dtype=float).copy()}
    for v in tree.bfs_order()[1:]:
        p = tree.parent[v]
        try:
            theta = angles[v]
            base, coeff = lengths[edge_key(p, v)]
        except KeyError as exc:
            raise StructureError(f"missing angle or length for tree edge ({p}, {v})") from exc
        pos[v] = pos[p] + (base + coeff * t) * unit(theta)
    return pos


def constraint_gaps(
    positions: Mapping[int, Sequence[float]],
    graph: WeightedGraph,
    required_scale: Optional[Mapping[Edge, float]] = None,
) -> Dict[Edge, float]:
    """Distance minus required contact length for every edge of ``graph``.

    Non-negative gaps satisfy the constraint; zero means tight contact.
    ``required_scale`` multiplies individual contact lengths (default 1).
    """
    out = {}
    for (i, j), r in graph.lengths.items():
        s = 1.0 if required_scale is None else required_scale.get((i, j), 1.0)
        d = np.asarray(positions[j], dtype=float) - np.asarray(positions[i], dtype=float)
        out[(i, j)] = float(math.hypot(*d)) - s * r if d.size == 2 else float(np.linalg.norm(d)) - s * r
    return out


def reroot_and_orient(
    tight_edges: Iterable[Edge],
    root: int,
    positions: Optional[Mapping[int, Sequence[float]]] = None,
    directed_angles: Optional[Mapping[Tuple[int, int], float]] = None,
) -> Tuple[RootedTree, Dict[int, float]]:
    """Root a set of tight edges at ``root`` and recompute child-ward angles.

    Angles come from ``directed_angles[(a, b)]`` (angle of b - a) when given,
    flipped by pi for edges that now point the other way; otherwise they are
    read off ``positions``.
    """
    parent = _bfs_parents(tight_edges, root)
    angles = {}
    for c, p in parent.items():
        if directed_angles is not None and (p, c) in directed_angles:
            angles[c] = directed_angles[(p, c)] % TAU
        elif directed_angles is not None and (c, p) in directed_angles:
            angles[c] = (directed_angles[(c, p)] + math.pi) % TAU
        elif positions is not None:
            d = np.asarray(positions[c], dtype=float) - np.asarray(positions[p], dtype=float)
            angles[c] = math.atan2(d[1], d[0]) % TAU
        else:
            raise StructureError(f"no angle information for edge ({p}, {c})")
    return RootedTree(root, parent), angles


def _bfs_parents(edges: Iterable[Edge], root: int) -> Dict[int, int]:
    adj: Dict[int, list] = {}
    count = 0
    for a, b in edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
        count += 1
    adj.setdefault(root, [])
    parent: Dict[int, int] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for w in sorted(adj[u]):
            if w in seen:
                continue
            seen.add(w)
            parent[w] = u
            queue.append(w)
    if len(seen) != len(adj):
        raise StructureError("tight edges are disconnected")
    if count != len(adj) - 1:
        raise StructureError("tight edges contain a cycle")
    return parent


def tree_from_edges(edges: Iterable[Edge], root: int = 1) -> RootedTree:
    """Root an undirected edge list (structure only)."""
    return RootedTree(root, _bfs_parents(edges, root))


def is_spanning_tree(edges: Sequence[Edge], vertices: Iterable[int]) -> bool:
    vs = list(vertices)
    if len(edges) != len(vs) - 1:
        return False
    comp = {v: v for v in vs}

    def find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False
        comp[ra] = rb
    return True
