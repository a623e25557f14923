"""The graph invariant mu(G): planar G-polymer volume divided by (2 pi)^(n-1).

Three independent routes are provided and cross-checked in the tests:

* counting safe spanning trees for a fixed edge order,
* the alternating sum over connected spanning subgraphs,
* deletion-contraction of the Tutte polynomial.

A fourth, inclusion-exclusion over vertex subsets (``mu``), is the fast path
used by the samplers.  Closed forms for complete multipartite graphs come from
exponential generating functions expanded with exact rationals.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import CapacityError, DomainError
from .geometry import Edge, WeightedGraph, edge_key

SUBGRAPH_MAX_EDGES = 24
TUTTE_MAX_EDGES = 24
FAST_MAX_VERTICES = 16


@dataclass(frozen=True)
class MuValue:
    value: int
    method: str  # "safe-trees", "subgraph-sum" or "tutte"
    signed_sum: Optional[int] = None

    def __int__(self):
        return self.value


def _require_connected(graph: WeightedGraph):
    if graph.n == 0 or not graph.is_connected():
        raise DomainError("mu is only defined for connected graphs")


def _index(graph: WeightedGraph) -> Dict[int, int]:
    return {v: i for i, v in enumerate(graph.vertices)}


# ---------------------------------------------------------------------------
# spanning trees and safe trees


def spanning_trees(graph: WeightedGraph) -> List[Tuple[Edge, ...]]:
    """All spanning trees, each as a tuple of edges (brute force over subsets)."""
    n = graph.n
    if n == 1:
        return [()]
    idx = _index(graph)
    out = []
    for combo in itertools.combinations(graph.edges, n - 1):
        comp = list(range(n))

        def find(x):
            while comp[x] != x:
                comp[x] = comp[comp[x]]
                x = comp[x]
            return x

        ok = True
        for a, b in combo:
            ra, rb = find(idx[a]), find(idx[b])
            if ra == rb:
                ok = False
                break
            comp[ra] = rb
        if ok:
            out.append(combo)
    return out


def _tree_path_edges(tree_edges: Sequence[Edge], a: int, b: int) -> List[Edge]:
    adj: Dict[int, list] = {}
    for u, v in tree_edges:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    prev = {a: None}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            break
        for w in adj.get(u, ()):
            if w not in prev:
                prev[w] = u
                stack.append(w)
    path = []
    u = b
    while prev[u] is not None:
        path.append(edge_key(u, prev[u]))
        u = prev[u]
    return path


def is_safe(tree_edges: Sequence[Edge], graph: WeightedGraph, rank: Mapping[Edge, int]) -> bool:
    """True when no non-tree edge is the lowest-ranked edge of its fundamental cycle."""
    in_tree = set(tree_edges)
    for e in graph.edges:
        if e in in_tree:
            continue
        path = _tree_path_edges(tree_edges, *e)
        if rank[e] < min(rank[f] for f in path):
            return False
    return True


def mu_safe_trees(graph: WeightedGraph, order: Optional[Sequence[Edge]] = None) -> MuValue:
    """Number of safe spanning trees for the edge order ``order`` (default: sorted edges)."""
    _require_connected(graph)
    if order is None:
        order = graph.edges
    order = [edge_key(*e) for e in order]
    if sorted(order) != graph.edges:
        raise DomainError("edge order must be a permutation of the edge set")
    rank = {e: i for i, e in enumerate(order)}
    count = sum(1 for tr in spanning_trees(graph) if is_safe(tr, graph, rank))
    return MuValue(count, "safe-trees")


# ---------------------------------------------------------------------------
# alternating sum over connected spanning subgraphs


def mu_subgraph_sum(graph: WeightedGraph, max_edges: int = SUBGRAPH_MAX_EDGES) -> MuValue:
    """Enumerate every edge subset, keep the connected spanning ones, sum (-1)^|H|."""
    _require_connected(graph)
    m, n = graph.m, graph.n
    if m > max_edges:
        raise CapacityError(f"{m} edges is too many to enumerate; use mu_safe_trees or tutte_mu")
    if n == 1:
        return MuValue(1, "subgraph-sum", 1)
    idx = _index(graph)
    ends = [(idx[a], idx[b]) for a, b in graph.edges]
    full = (1 << n) - 1
    total = 0
    chunk = 1 << min(m, 20)
    for start in range(0, 1 << m, chunk):
        masks = np.arange(start, min(start + chunk, 1 << m), dtype=np.int64)
        reach = np.ones_like(masks)
        bits = [((masks >> e) & 1).astype(bool) for e in range(m)]
        for _ in range(n - 1):
            before = reach
            for e, (a, b) in enumerate(ends):
                has_a = ((reach >> a) & 1).astype(bool)
                has_b = ((reach >> b) & 1).astype(bool)
                reach = reach | np.where(bits[e] & has_a, 1 << b, 0) | np.where(bits[e] & has_b, 1 << a, 0)
            if np.array_equal(before, reach):
                break
        conn = reach == full
        parity = (np.bitwise_count(masks[conn]) & 1).astype(np.int64)
        total += int(np.sum(1 - 2 * parity))
    return MuValue(abs(total), "subgraph-sum", total)


# ---------------------------------------------------------------------------
# Tutte polynomial by deletion-contraction

Poly = Dict[Tuple[int, int], int]


def _padd(p: Poly, q: Poly) -> Poly:
    out = dict(p)
    for k, c in q.items():
        out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _pmul(p: Poly, q: Poly) -> Poly:
    out: Poly = {}
    for (a, b), c in p.items():
        for (d, e), f in q.items():
            out[(a + d, b + e)] = out.get((a + d, b + e), 0) + c * f
    return {k: c for k, c in out.items() if c}


def _canonical(multi: Dict[Edge, int]) -> Tuple[Tuple[int, int, int], ...]:
    """Relabel a multigraph by a degree-based vertex ordering (exact encoding)."""
    deg: Dict[int, int] = {}
    nbrs: Dict[int, list] = {}
    for (u, v), k in multi.items():
        deg[u] = deg.get(u, 0) + k
        deg[v] = deg.get(v, 0) + k
        nbrs.setdefault(u, []).append(v)
        nbrs.setdefault(v, []).append(u)
    sig = {v: (deg[v], tuple(sorted(deg[w] for w in nbrs[v]))) for v in deg}
    order = sorted(deg, key=lambda v: (sig[v], v))
    lab = {v: i for i, v in enumerate(order)}
    return tuple(sorted((min(lab[u], lab[v]), max(lab[u], lab[v]), k) for (u, v), k in multi.items()))


def _connected_after_removal(multi: Dict[Edge, int], u: int, v: int) -> bool:
    adj: Dict[int, list] = {}
    for (a, b) in multi:
        if (a, b) == (u, v):
            continue
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    seen = {u}
    stack = [u]
    while stack:
        x = stack.pop()
        if x == v:
            return True
        for w in adj.get(x, ()):
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return False


@lru_cache(maxsize=200_000)
def _tutte_canonical(key: Tuple[Tuple[int, int, int], ...]) -> Tuple[Tuple[Tuple[int, int], int], ...]:
    multi = {(u, v): k for u, v, k in key}
    if not multi:
        return (((0, 0), 1),)
    deg: Dict[int, int] = {}
    for (u, v), k in multi.items():
        deg[u] = deg.get(u, 0) + k
        deg[v] = deg.get(v, 0) + k
    # branch on a parallel class at a minimum-degree vertex
    w = min(deg, key=lambda x: (deg[x], x))
    (u, v), p = next(((e, k) for e, k in sorted(multi.items()) if w in e))
    contracted: Dict[Edge, int] = {}
    for (a, b), k in multi.items():
        if (a, b) == (u, v):
            continue
        a2 = u if a == v else a
        b2 = u if b == v else b
        e2 = edge_key(a2, b2)
        contracted[e2] = contracted.get(e2, 0) + k
    t_con = dict(_tutte_canonical(_canonical(contracted)))
    ys = {(0, j): 1 for j in range(1, p)}  # y + ... + y^(p-1)
    if _connected_after_removal(multi, u, v):
        deleted = {e: k for e, k in multi.items() if e != (u, v)}
        t_del = dict(_tutte_canonical(_canonical(deleted)))
        result = _padd(t_del, _pmul(_padd({(0, 0): 1}, ys), t_con))
    else:
        result = _pmul(_padd({(1, 0): 1}, ys), t_con)
    return tuple(sorted(result.items()))


def tutte_polynomial(graph: WeightedGraph) -> Poly:
    """Tutte polynomial as ``{(i, j): coefficient of x^i y^j}`` (connected graphs)."""
    _require_connected(graph)
    if graph.m > TUTTE_MAX_EDGES:
        raise CapacityError(f"{graph.m} edges exceeds the deletion-contraction limit")
    multi = {e: 1 for e in graph.edges}
    return dict(_tutte_canonical(_canonical(multi)))


def tutte_eval(poly: Poly, x, y):
    return sum(c * x**i * y**j for (i, j), c in poly.items())


def tutte_mu(graph: WeightedGraph) -> MuValue:
    """mu(G) as the Tutte polynomial at (x, y) = (1, 0).

    Zero external activity (the safe-tree condition) sits at (1, 0) in the
    usual convention T = sum_T x^internal y^external.
    """
    return MuValue(abs(tutte_eval(tutte_polynomial(graph), 1, 0)), "tutte")


# ---------------------------------------------------------------------------
# inclusion-exclusion over vertex subsets


@lru_cache(maxsize=50_000)
def _mu_masks(n: int, adjmask: Tuple[int, ...]) -> int:
    size = 1 << n
    indep = [False] * size
    indep[0] = True
    for s in range(1, size):
        low = (s & -s).bit_length() - 1
        rest = s & (s - 1)
        indep[s] = indep[rest] and not (adjmask[low] & rest)
    conn = [0] * size
    for s in range(1, size):
        low_bit = s & -s
        rest = s ^ low_bit
        acc = 1 if indep[s] else 0
        # W ranges over proper subsets of s that contain the lowest vertex
        sub = rest
        while True:
            w = sub | low_bit
            if w != s and indep[s ^ w]:
                acc -= conn[w]
            if sub == 0:
                break
            sub = (sub - 1) & rest
        conn[s] = acc
    return conn[size - 1]


def mu_signed(graph: WeightedGraph) -> int:
    """Signed sum over connected spanning subgraphs, via vertex-subset recursion (O(3^n))."""
    n = graph.n
    if n > FAST_MAX_VERTICES:
        raise CapacityError(f"{n} vertices exceeds the vertex-subset limit")
    idx = _index(graph)
    adj = [0] * n
    for a, b in graph.edges:
        adj[idx[a]] |= 1 << idx[b]
        adj[idx[b]] |= 1 << idx[a]
    return _mu_masks(n, tuple(adj))


def mu(graph: WeightedGraph) -> int:
    """mu(G) by the fastest available route."""
    _require_connected(graph)
    return abs(mu_signed(graph))


# ---------------------------------------------------------------------------
# exact multivariate power series


class _Series:
    """Truncated multivariate power series with Fraction coefficients."""

    def __init__(self, top: Tuple[int, ...], coef: Optional[Dict[Tuple[int, ...], Fraction]] = None):
        self.top = top
        self.coef = {k: v for k, v in (coef or {}).items() if v and all(a <= b for a, b in zip(k, top))}

    def __add__(self, other: "_Series") -> "_Series":
        out = dict(self.coef)
        for k, v in other.coef.items():
            out[k] = out.get(k, 0) + v
        return _Series(self.top, out)

    def scale(self, c) -> "_Series":
        return _Series(self.top, {k: v * c for k, v in self.coef.items()})

    def __mul__(self, other: "_Series") -> "_Series":
        out: Dict[Tuple[int, ...], Fraction] = {}
        top = self.top
        for k1, v1 in self.coef.items():
            for k2, v2 in other.coef.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                if all(a <= b for a, b in zip(k, top)):
                    out[k] = out.get(k, 0) + v1 * v2
        return _Series(top, out)

    def log1p(self) -> "_Series":
        """log(1 + self); self must have no constant term."""
        zero = tuple(0 for _ in self.top)
        if self.coef.get(zero):
            raise ValueError("log1p needs a series without constant term")
        result = _Series(self.top)
        power = _Series(self.top, {zero: Fraction(1)})
        for j in range(1, sum(self.top) + 1):
            power = power * self
            if not power.coef:
                break
            result = result + power.scale(Fraction((-1) ** (j + 1), j))
        return result

    def __getitem__(self, k):
        return self.coef.get(tuple(k), Fraction(0))


def _expm1(var: int, top: Tuple[int, ...], sign: int = 1) -> _Series:
    """exp(sign * x_var) - 1."""
    coef = {}
    for a in range(1, top[var] + 1):
        k = [0] * len(top)
        k[var] = a
        coef[tuple(k)] = Fraction(sign**a, math.factorial(a))
    return _Series(top, coef)


def mu_bipartite(m: int, n: int, limit: int = 12) -> int:
    """mu(K_{m,n}) from H(x, y) = log(e^-x + e^-y - e^-(x+y))."""
    if m < 1 or n < 1:
        raise DomainError("both sides need at least one vertex")
    if m > limit or n > limit:
        raise CapacityError(f"side sizes above {limit} are not supported")
    top = (m, n)
    # e^-x + e^-y - e^-(x+y) = 1 - (1 - e^-x)(1 - e^-y)
    w = (_expm1(0, top, -1) * _expm1(1, top, -1)).scale(-1)
    coeff = w.log1p()[(m, n)]
    return abs(int(coeff * math.factorial(m) * math.factorial(n)))


def mu_kpartite(sizes: Sequence[int], limit: int = 12) -> int:
    """mu of the complete multipartite graph with the given part sizes."""
    sizes = tuple(int(s) for s in sizes if s)
    if not sizes or min(sizes) < 0:
        raise DomainError("part sizes must be positive")
    if len(sizes) == 1 and sizes[0] > 1:
        raise DomainError("a single part with several vertices is disconnected")
    if sum(sizes) > limit:
        raise CapacityError(f"more than {limit} vertices in total")
    top = sizes
    k = len(sizes)
    z = _Series(top)
    for i in range(k):
        z = z + _expm1(i, top)
    h = z.log1p()
    # the -sum(x_i) term only touches degree-one monomials
    coeff = h[top]
    if sum(top) == 1:
        coeff -= 1
    return abs(int(coeff * math.prod(math.factorial(s) for s in top)))


# ---------------------------------------------------------------------------
# unit-interval graphs


def gamma_product(xs: Sequence[float]) -> int:
    """Product over j >= 2 of the number of earlier points within distance 1."""
    xs = [float(x) for x in xs]
    if not xs:
        raise DomainError("empty projection vector")
    if abs(xs[0]) > 1e-12:
        raise DomainError("projection vector must start at 0")
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise DomainError("projection vector must be sorted")
    out = 1
    for j in range(1, len(xs)):
        g = sum(1 for i in range(j) if xs[j] - xs[i] <= 1.0)
        if g == 0:
            raise DomainError(f"gap above 1 before position {j + 1}: interval graph is disconnected")
        out *= g
    return out


BetaSpec = Union[None, float, Mapping[Edge, float], Callable[[int, int], float]]


def _beta_lookup(beta: BetaSpec) -> Callable[[int, int], float]:
    if beta is None:
        return lambda i, j: 1.0
    if callable(beta):
        return beta
    if isinstance(beta, Mapping):
        return lambda i, j: float(beta.get(edge_key(i, j), 1.0))
    b = float(beta)
    return lambda i, j: b


def interval_graph(xs: Sequence[float], beta: BetaSpec = None, labels: Optional[Sequence[int]] = None) -> WeightedGraph:
    """Unit-interval graph on points ``xs`` with yz contact lengths.

    Vertices ``i``, ``j`` are adjacent when ``|x_i - x_j| <= 1``; the edge
    carries ``sqrt((1 - (x_j - x_i)^2) / beta_ij)``.
    """
    xs = [float(x) for x in xs]
    labels = list(range(1, len(xs) + 1)) if labels is None else list(labels)
    if len(set(xs)) != len(xs):
        raise DomainError("interval graph needs distinct points")
    look = _beta_lookup(beta)
    lengths, betas = {}, {}
    for a in range(len(xs)):
        for b in range(a + 1, len(xs)):
            dx = xs[b] - xs[a]
            if abs(dx) <= 1.0:
                i, j = labels[a], labels[b]
                bij = look(i, j)
                lengths[edge_key(i, j)] = math.sqrt(max(0.0, 1.0 - dx * dx) / bij)
                if bij != 1.0:
                    betas[edge_key(i, j)] = bij
    return WeightedGraph(tuple(labels), lengths, betas)
