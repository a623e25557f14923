"""Exact uniform sampling of planar branched polymers and G-polymers.

Vertices are added one at a time.  A new vertex starts with contact lengths
scaled by ``t = 0`` and its lengths grow linearly until ``t = 1``.  Between
events all tree angles stay fixed, so every position is affine in ``t`` and
each constrained pair's squared gap is a quadratic; the next contact is found
in closed form.  When a contact closes a cycle, one cycle edge is released
with probability proportional to the rate at which its chart gains volume,
which keeps the measure uniform at every ``t``.

The chart that drops edge ``e`` sees the shared boundary with density
``L_e`` relative to the intrinsic boundary measure, so its volume gain rate is
``L_e * rho_e`` where ``rho_e`` is the opening speed of the gap of ``e``.
Around any cycle these products sum to zero.
"""

from __future__ import annotations

import itertools
import math
from functools import lru_cache
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .exceptions import DomainError, GeometryError, OrderingError
from .geometry import TAU, Edge, RootedTree, WeightedGraph, _bfs_parents, edge_key, gap_tolerance
from .invariants import mu

MAX_EVENTS = 100_000
SIMULTANEOUS = 1e-12


@dataclass
class Candidate:
    edge: Edge  # labels
    rate: float  # opening speed of the gap of ``edge`` once it is released
    length: float  # contact length of ``edge`` at the event

    @property
    def weight(self) -> float:
        return max(0.0, self.rate * self.length)


@dataclass
class CycleEvent:
    t: float
    pair: Edge  # labels of the newly tight pair
    cycle: List[int]  # labels, tree path from pair[0] to pair[1]
    candidates: List[Candidate] = field(default_factory=list)


@dataclass
class Polymer2D:
    labels: Tuple[int, ...]
    positions: np.ndarray  # row i is the center of labels[i]
    tree: RootedTree
    radii: Optional[Tuple[float, ...]] = None
    graph: Optional[WeightedGraph] = None
    seed: Optional[int] = None
    events: int = 0

    @property
    def n(self) -> int:
        return len(self.labels)

    @property
    def tangency_edges(self) -> List[Edge]:
        return sorted(self.tree.edges())

    def position(self, label: int) -> np.ndarray:
        return self.positions[self.labels.index(label)]


class GrowthState:
    """Live state of the incremental sampler.

    Vertices are stored by row, the row being the vertex's index in the
    placement order.  Row 0 is the root and sits at the origin.
    """

    def __init__(self, graph: WeightedGraph, order: Sequence[int], radii: Optional[Sequence[float]] = None):
        self.graph = graph
        self.order = list(order)
        self.row = {v: i for i, v in enumerate(self.order)}
        self.radii = None if radii is None else [float(r) for r in radii]  # by row
        N = len(self.order)
        pairs = sorted(
            (max(self.row[a], self.row[b]), min(self.row[a], self.row[b]), r) for (a, b), r in graph.lengths.items()
        )
        self.pJ = np.array([p[0] for p in pairs], dtype=np.intp)
        self.pI = np.array([p[1] for p in pairs], dtype=np.intp)
        self.pR = np.array([p[2] for p in pairs], dtype=float)
        self.pBase = self.pR.copy()
        self.pCoeff = np.zeros_like(self.pR)
        self.length_of = {(p[1], p[0]): p[2] for p in pairs}
        # coordinates never exceed N times the longest contact
        self.scale = N * float(self.pR.max()) if len(pairs) else 1.0
        self.is_tree = np.zeros((N, N), dtype=bool)
        self.m = 1
        self.parent: Dict[int, int] = {}
        self.theta: Dict[int, float] = {}
        self.k: Optional[int] = None
        self.kgrowth: Dict[int, Tuple[float, float]] = {}
        self.t = 1.0
        self.events = 0
        self._bfs = [0]
        self.P = np.zeros((N, 2))
        self.V = np.zeros((N, 2))

    # -- bookkeeping --------------------------------------------------------

    @property
    def active(self) -> int:
        """Number of constrained pairs among placed rows (pairs are sorted by max row)."""
        return int(np.searchsorted(self.pJ, self.m))

    def edge_length(self, a: int, b: int) -> Tuple[float, float]:
        """(base, coeff) of the contact length between rows ``a`` and ``b``."""
        if self.k is not None and self.k in (a, b):
            other = b if a == self.k else a
            return self.kgrowth[other]
        return self.length_of[(min(a, b), max(a, b))], 0.0

    def rebuild_order(self):
        children: Dict[int, list] = {}
        for c, p in self.parent.items():
            children.setdefault(p, []).append(c)
        order = [0]
        for v in order:
            order.extend(children.get(v, ()))
        if len(order) != self.m:
            raise GeometryError("tree does not span the placed vertices")
        self._bfs = order

    def update_kinematics(self):
        """Positions at the current ``t`` and their velocities d/dt."""
        P, V, t = self.P, self.V, self.t
        P[0] = 0.0
        V[0] = 0.0
        for r in self._bfs[1:]:
            p = self.parent[r]
            th = self.theta[r]
            c, s = math.cos(th), math.sin(th)
            base, coeff = self.edge_length(p, r)
            L = base + coeff * t
            P[r, 0] = P[p, 0] + L * c
            P[r, 1] = P[p, 1] + L * s
            V[r, 0] = V[p, 0] + coeff * c
            V[r, 1] = V[p, 1] + coeff * s

    def set_tree(self, edges_with_angles: Dict[Tuple[int, int], float]):
        """Install a tree given directed angles ``{(a, b): angle of b - a}`` on rows."""
        parent = _bfs_parents(edges_with_angles, 0)
        theta = {}
        for c, p in parent.items():
            if (p, c) in edges_with_angles:
                theta[c] = edges_with_angles[(p, c)] % TAU
            else:
                theta[c] = (edges_with_angles[(c, p)] + math.pi) % TAU
        self.is_tree[:, :] = False
        for c, p in parent.items():
            self.is_tree[c, p] = self.is_tree[p, c] = True
        self.parent = parent
        self.theta = theta
        self.rebuild_order()
        self.update_kinematics()

    def directed_angles(self) -> Dict[Tuple[int, int], float]:
        return {(p, c): self.theta[c] for c, p in self.parent.items()}

    def tree_path(self, a: int, b: int) -> List[int]:
        pa = [a]
        while pa[-1] != 0:
            pa.append(self.parent[pa[-1]])
        pos = {v: i for i, v in enumerate(pa)}
        pb = [b]
        while pb[-1] not in pos:
            pb.append(self.parent[pb[-1]])
        return pa[: pos[pb[-1]] + 1] + pb[:-1][::-1]

    def gaps(self) -> Dict[Edge, float]:
        """Gap of every constrained pair among placed vertices, keyed by labels."""
        n = self.active
        I, J = self.pI[:n], self.pJ[:n]
        D = self.P[J] - self.P[I]
        L = self.pBase[:n] + self.pCoeff[:n] * self.t
        g = np.hypot(D[:, 0], D[:, 1]) - L
        return {edge_key(self.order[i], self.order[j]): float(x) for i, j, x in zip(I, J, g)}

    def tree_edges(self) -> List[Edge]:
        return sorted(edge_key(self.order[c], self.order[p]) for c, p in self.parent.items())

    def to_polymer(self, seed=None) -> Polymer2D:
        rows = range(self.m)
        labels = tuple(self.order[r] for r in rows)
        tree = RootedTree(self.order[0], {self.order[c]: self.order[p] for c, p in self.parent.items()})
        radii = None if self.radii is None else tuple(self.radii[: self.m])
        return Polymer2D(labels, self.P[: self.m].copy(), tree, radii, self.graph, seed, self.events)

    # -- growth setup -------------------------------------------------------

    def start_growth(self, k: int):
        """Begin growing row ``k``; its contact lengths are scaled by ``t``."""
        if k != self.m:
            raise OrderingError("vertices must be added in placement order")
        n = int(np.searchsorted(self.pJ, k + 1))
        idxs = np.nonzero(self.pJ[:n] == k)[0]
        if len(idxs) == 0:
            raise OrderingError(f"vertex {self.order[k]} has no placed neighbour")
        self.m = k + 1
        self.k = k
        self.t = 0.0
        self.kgrowth = {}
        for idx in idxs:
            i = int(self.pI[idx])
            if self.radii is not None:
                base, coeff = self.radii[i], self.radii[k]
            else:
                base, coeff = 0.0, float(self.pR[idx])
            self.kgrowth[i] = (base, coeff)
            self.pBase[idx] = base
            self.pCoeff[idx] = coeff

    def finish_growth(self):
        n = self.active
        sel = self.pJ[:n] == self.k
        self.pBase[:n][sel] = self.pR[:n][sel]
        self.pCoeff[:n][sel] = 0.0
        self.t = 1.0
        self.k = None
        self.kgrowth = {}
        self.update_kinematics()


# ---------------------------------------------------------------------------
# events


def _downward_root(alpha: float, beta: float, gamma: float) -> float:
    """First s >= 0 where alpha s^2 + beta s + gamma crosses zero going down, else inf."""
    disc = beta * beta - 4.0 * alpha * gamma
    if disc < 0.0:
        return math.inf
    sq = math.sqrt(disc)
    if beta < 0.0:
        s = 2.0 * gamma / (-beta + sq)
    elif alpha < 0.0:
        s = (beta + sq) / (-2.0 * alpha)
    else:
        return math.inf
    if s < 0.0:
        return 0.0 if s > -1e-9 else math.inf
    return s


def _next_event_scalar(state: GrowthState, n: int) -> Optional[Tuple[float, int, int]]:
    P, V, t0, order = state.P, state.V, state.t, state.order
    best, pick = math.inf, None
    horizon = 1.0 - t0 + 1e-15
    for q in range(n):
        i, j = int(state.pI[q]), int(state.pJ[q])
        if state.is_tree[i, j]:
            continue
        coeff = float(state.pCoeff[q])
        L0 = float(state.pBase[q]) + coeff * t0
        dx, dy = P[j, 0] - P[i, 0], P[j, 1] - P[i, 1]
        vx, vy = V[j, 0] - V[i, 0], V[j, 1] - V[i, 1]
        gap = math.hypot(dx, dy) - L0
        if gap < -gap_tolerance(L0, state.scale):
            raise GeometryError(f"pair ({order[i]}, {order[j]}) overlaps by {-gap:.3e} at t={t0:.6f}")
        s = _downward_root(
            vx * vx + vy * vy - coeff * coeff,
            2.0 * (dx * vx + dy * vy - L0 * coeff),
            dx * dx + dy * dy - L0 * L0,
        )
        if s > horizon:
            continue
        if pick is None or s < best - SIMULTANEOUS:
            best, pick = s, (i, j)
        elif s <= best + SIMULTANEOUS and edge_key(order[i], order[j]) < edge_key(order[pick[0]], order[pick[1]]):
            best, pick = min(s, best), (i, j)
    if pick is None:
        return None
    return min(1.0, t0 + best), pick[0], pick[1]


SCALAR_PAIRS = 40


def _next_event_rows(state: GrowthState, vectorized: Optional[bool] = None) -> Optional[Tuple[float, int, int]]:
    n = state.active
    if vectorized is None:
        vectorized = n > SCALAR_PAIRS
    if not vectorized:
        return _next_event_scalar(state, n)
    I, J, base, coeff = state.pI[:n], state.pJ[:n], state.pBase[:n], state.pCoeff[:n]
    # gaps of pairs with both ends at rest and a fixed length cannot change
    Vm = state.V[: state.m]
    moving = (Vm[:, 0] != 0.0) | (Vm[:, 1] != 0.0)
    keep = moving[I] | moving[J] | (coeff != 0.0)
    I, J, base, coeff = I[keep], J[keep], base[keep], coeff[keep]
    keep = ~state.is_tree[I, J]
    if not keep.any():
        return None
    I, J, base, coeff = I[keep], J[keep], base[keep], coeff[keep]
    t0 = state.t
    D = state.P[J] - state.P[I]
    dV = state.V[J] - state.V[I]
    L0 = base + coeff * t0
    dist = np.hypot(D[:, 0], D[:, 1])
    gap = dist - L0
    tol = gap_tolerance(L0, state.scale)
    if (gap < -tol).any():
        bad = int(np.argmin(gap / tol))
        raise GeometryError(
            f"pair ({state.order[I[bad]]}, {state.order[J[bad]]}) overlaps by {-gap[bad]:.3e} at t={t0:.6f}"
        )
    gamma = np.einsum("ij,ij->i", D, D) - L0 * L0
    beta = 2.0 * (np.einsum("ij,ij->i", D, dV) - L0 * coeff)
    alpha = np.einsum("ij,ij->i", dV, dV) - coeff * coeff
    disc = beta * beta - 4.0 * alpha * gamma
    ok = disc >= 0.0
    sq = np.sqrt(np.where(ok, disc, 0.0))
    s = np.full(len(I), np.inf)
    with np.errstate(divide="ignore", invalid="ignore"):
        # the downward crossing is the root where f' = -sqrt(disc) < 0
        closing = ok & (beta < 0)
        s = np.where(closing, 2.0 * gamma / (-beta + sq), s)
        late = ok & (beta >= 0) & (alpha < 0)
        s = np.where(late, (beta + sq) / (-2.0 * alpha), s)
    s = np.where(np.isnan(s), np.inf, s)
    s = np.where((s < 0) & (s > -1e-9), 0.0, s)
    s = np.where(s < 0, np.inf, s)
    horizon = 1.0 - t0
    s = np.where(s <= horizon + 1e-15, s, np.inf)
    if not np.isfinite(s).any():
        return None
    best = float(s.min())
    tied = np.nonzero(s <= best + SIMULTANEOUS)[0]
    if len(tied) > 1:
        pick = min(tied, key=lambda q: edge_key(state.order[I[q]], state.order[J[q]]))
    else:
        pick = int(tied[0])
    return min(1.0, t0 + best), int(I[pick]), int(J[pick])


def detect_next_event(state: GrowthState) -> Optional[Tuple[float, Edge]]:
    """Smallest ``t* >= t`` at which a constrained non-tree gap closes, with its pair."""
    ev = _next_event_rows(state)
    if ev is None:
        return None
    t, i, j = ev
    return t, edge_key(state.order[i], state.order[j])


def _cycle_candidates(state: GrowthState, i: int, j: int) -> Tuple[List[int], List[Tuple[int, int, float, float]]]:
    """Cycle rows and per-edge (a, b, rho, length) for the new tight pair (i, j)."""
    path = state.tree_path(i, j)
    cyc = path + [i]
    P, t = state.P, state.t
    w, coeffs, lengths = [], [], []
    for a, b in zip(cyc, cyc[1:]):
        if state.parent.get(b) == a:
            th = state.theta[b]
            u = (math.cos(th), math.sin(th))
        elif state.parent.get(a) == b:
            th = state.theta[a]
            u = (-math.cos(th), -math.sin(th))
        else:  # the closing pair, direction from positions
            d = P[b] - P[a]
            nd = math.hypot(d[0], d[1])
            u = (d[0] / nd, d[1] / nd)
        base, coeff = state.edge_length(a, b)
        w.append(u)
        coeffs.append(coeff)
        lengths.append(base + coeff * t)
    # releasing edge c leaves the rest of the cycle as the tree path between
    # its endpoints; their relative velocity is minus the sum over the others
    vx = sum(c * u[0] for c, u in zip(coeffs, w))
    vy = sum(c * u[1] for c, u in zip(coeffs, w))
    out = []
    for (a, b), u, L in zip(zip(cyc, cyc[1:]), w, lengths):
        rho = -(u[0] * vx + u[1] * vy)
        out.append((a, b, rho, L))
    return path, out


def candidate_rates(state: GrowthState, pair: Edge) -> CycleEvent:
    """Gap-opening rates of every chart obtained by releasing one cycle edge."""
    i, j = state.row[pair[0]], state.row[pair[1]]
    path, cands = _cycle_candidates(state, i, j)
    o = state.order
    ev = CycleEvent(
        state.t,
        edge_key(o[i], o[j]),
        [o[r] for r in path],
        [Candidate(edge_key(o[a], o[b]), rho, L) for a, b, rho, L in cands],
    )
    if not any(c.weight > 0 for c in ev.candidates):
        raise GeometryError(f"no releasable edge gains volume at t={state.t}: {ev.candidates}")
    return ev


def break_cycle(state: GrowthState, event: CycleEvent, rng: np.random.Generator) -> Edge:
    """Release one cycle edge with probability proportional to its volume gain rate."""
    weights = np.array([c.weight for c in event.candidates])
    total = weights.sum()
    if not total > 0:
        raise GeometryError("all candidate rates are non-positive")
    pick = int(rng.choice(len(weights), p=weights / total))
    drop = event.candidates[pick].edge
    i, j = state.row[event.pair[0]], state.row[event.pair[1]]
    da, db = state.row[drop[0]], state.row[drop[1]]
    angles = state.directed_angles()
    angles.pop((da, db), None)
    angles.pop((db, da), None)
    if (da, db) != (min(i, j), max(i, j)) and (da, db) != (max(i, j), min(i, j)):
        d = state.P[j] - state.P[i]
        angles[(i, j)] = math.atan2(d[1], d[0]) % TAU
    state.set_tree(angles)
    state.events += 1
    return drop


def grow(state: GrowthState, rng: np.random.Generator, trace: Optional[list] = None):
    """Advance the growing vertex from the current ``t`` to 1."""
    count = 0
    while True:
        ev = _next_event_rows(state)
        if ev is None:
            break
        t, i, j = ev
        state.t = t
        state.update_kinematics()
        event = candidate_rates(state, edge_key(state.order[i], state.order[j]))
        dropped = break_cycle(state, event, rng)
        if trace is not None:
            trace.append((event, dropped))
        count += 1
        if count > MAX_EVENTS:
            raise GeometryError("event limit exceeded while growing a vertex")
    state.finish_growth()


def begin_vertex(
    state: GrowthState, rng: np.random.Generator, neighbor: Optional[int] = None, angle: Optional[float] = None
) -> GrowthState:
    """Attach the next vertex of the order at ``t = 0`` without growing it.

    The neighbour is uniform over placed graph neighbours and the attachment
    angle uniform on [0, 2 pi) unless given.
    """
    k = state.m
    if neighbor is not None:
        j = state.row.get(neighbor, k)
        if j >= k or not state.graph.has_edge(neighbor, state.order[k]):
            raise OrderingError(f"{neighbor} is not a placed neighbour of {state.order[k]}")
    state.start_growth(k)
    if neighbor is None:
        j = int(rng.choice(sorted(state.kgrowth)))
    theta = rng.uniform(0.0, TAU) if angle is None else float(angle) % TAU
    angles = state.directed_angles()
    angles[(j, k)] = theta
    state.set_tree(angles)
    return state


def add_vertex(
    state: GrowthState,
    rng: np.random.Generator,
    neighbor: Optional[int] = None,
    angle: Optional[float] = None,
    trace: Optional[list] = None,
) -> GrowthState:
    """Place the next vertex of the order at a placed neighbour and grow it to full size."""
    begin_vertex(state, rng, neighbor, angle)
    grow(state, rng, trace)
    return state


# ---------------------------------------------------------------------------
# attachment plans for general graphs


def contract_independent(graph: WeightedGraph, group: Sequence[int], into: int):
    """Merge an independent vertex set into ``into``; parallel edges keep the longest.

    Returns the merged graph and, for each merged edge ``(into, w)``, the
    original member of ``group`` that supplies its length.
    """
    gs = set(group)
    lengths: Dict[Edge, float] = {}
    source: Dict[int, int] = {}
    for (a, b), r in sorted(graph.lengths.items()):
        if a in gs and b in gs:
            raise DomainError("merged vertices must be pairwise non-adjacent")
        a2, b2 = (into if a in gs else a), (into if b in gs else b)
        key = edge_key(a2, b2)
        if r > lengths.get(key, -1.0):
            lengths[key] = r
            if a in gs:
                source[b] = a
            elif b in gs:
                source[a] = b
    verts = tuple(v for v in graph.vertices if v not in gs or v == into)
    return WeightedGraph(verts, lengths), source


def attachment_options(graph: WeightedGraph, order: Sequence[int], pos: int):
    """Ways the vertex ``order[pos]`` can sit at ``t = 0`` with their relative volumes.

    Each option is ``(group, weight)``: the new vertex starts coincident with
    every member of ``group``, an independent set of placed neighbours, and
    ``weight`` is the invariant of the placed graph with ``group`` merged.
    When the placed neighbours form a clique only singletons exist and they
    all weigh 1 instead; weights are only ever compared within one position.
    Weights depend on the graph structure only, not on its lengths.
    """
    return attachment_plan(graph, order)[pos]


def attachment_plan(graph: WeightedGraph, order: Sequence[int]):
    """``attachment_options`` for every position of ``order`` (position 0 is empty)."""
    return _plan(graph.key(), tuple(order))


@lru_cache(maxsize=256)
def _plan(key, order):
    vertices, edges = key
    graph = WeightedGraph(vertices, {e: 1.0 for e in edges})
    adj = graph.adjacency()
    plans = [()]
    for pos in range(1, len(order)):
        k = order[pos]
        placed = set(order[:pos])
        nbrs = [v for v in order[:pos] if v in adj[k]]
        if not nbrs:
            raise OrderingError(f"vertex {k} has no earlier neighbour in the order")
        ns = set(nbrs)
        if all(len(adj[a] & ns) == len(nbrs) - 1 for a in nbrs):
            plans.append(tuple(((v,), 1) for v in nbrs))
            continue
        prefix = graph.induced(placed)
        base = mu(prefix)
        opts = []
        for size in range(1, len(nbrs) + 1):
            for group in itertools.combinations(nbrs, size):
                if any(b in adj[a] for a, b in itertools.combinations(group, 2)):
                    continue
                if size == 1:
                    opts.append((group, base))
                else:
                    merged, _ = contract_independent(prefix, group, group[0])
                    opts.append((group, mu(merged)))
        plans.append(tuple(o for o in opts if o[1] > 0))
    return tuple(plans)


def _check_order(graph: WeightedGraph, order: Sequence[int]):
    if sorted(order) != sorted(graph.vertices):
        raise OrderingError("order must list every vertex exactly once")
    for pos in range(1, len(order)):
        if not graph.is_connected(order[: pos + 1]):
            raise OrderingError(f"prefix {list(order[: pos + 1])} is disconnected")


def default_order(graph: WeightedGraph, root: Optional[int] = None) -> List[int]:
    """Breadth-first order from ``root`` (default: smallest label)."""
    root = graph.vertices[0] if root is None else root
    adj = graph.adjacency()
    order = [root]
    seen = {root}
    for v in order:
        for w in sorted(adj[v]):
            if w not in seen:
                seen.add(w)
                order.append(w)
    if len(order) != graph.n:
        raise DomainError("graph is disconnected")
    return order


def _assemble(graph, order, pos, group, sub: GrowthState, source, rng) -> GrowthState:
    """Full-graph state at t = 0 from a sample of the merged prefix graph."""
    state = GrowthState(graph, order)
    state.m = pos  # placed before the new vertex
    k = pos
    state.start_growth(k)
    into = group[0]
    angles: Dict[Tuple[int, int], float] = {}
    for c, p in sub.parent.items():
        a, b = sub.order[p], sub.order[c]
        if a == into:
            a = source[b]
        if b == into:
            b = source[a]
        angles[(state.row[a], state.row[b])] = sub.theta[c]
    for g in group:
        angles[(k, state.row[g])] = rng.uniform(0.0, TAU)
    state.set_tree(angles)
    state.events = sub.events
    return state


def _sample_state(graph: WeightedGraph, order: Sequence[int], rng: np.random.Generator, radii=None, history=None):
    state = GrowthState(graph, order, radii)
    if history is not None:
        history.append(state.to_polymer())
    plan = attachment_plan(graph, order)
    for pos in range(1, len(order)):
        opts = plan[pos]
        if len(opts) == 1:
            group = opts[0][0]
        else:
            w = np.array([o[1] for o in opts], dtype=float)
            group = opts[int(rng.choice(len(opts), p=w / w.sum()))][0]
        if len(group) == 1:
            add_vertex(state, rng, neighbor=group[0])
        else:
            prefix = graph.induced(order[:pos])
            merged, source = contract_independent(prefix, group, group[0])
            gs = set(group[1:])
            sub_order = [v for v in order[:pos] if v not in gs]
            sub = _sample_state(merged, sub_order, rng)
            state = _assemble(graph, order, pos, group, sub, source, rng)
            grow(state, rng)
        if history is not None:
            history.append(state.to_polymer())
    return state


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def sample_polymer_2d(
    n: int, radii: Optional[Sequence[float]] = None, rng=None, history: Optional[list] = None
) -> Polymer2D:
    """Uniformly random planar polymer of ``n`` disks (unit radii by default).

    ``rng`` is a ``numpy.random.Generator`` or a seed.  When ``history`` is a
    list, the polymer after each added disk is appended to it.
    """
    if n < 1:
        raise DomainError("n must be at least 1")
    radii = [1.0] * n if radii is None else [float(r) for r in radii]
    if len(radii) != n or min(radii) <= 0:
        raise DomainError("need n positive radii")
    seed = rng if isinstance(rng, (int, np.integer)) else None
    graph = WeightedGraph.disks(radii)
    state = _sample_state(graph, list(range(1, n + 1)), _rng(rng), radii=radii, history=history)
    poly = state.to_polymer(seed)
    poly.graph = None
    return poly


def sample_gpolymer(
    graph: WeightedGraph, order: Optional[Sequence[int]] = None, rng=None, history: Optional[list] = None
) -> Polymer2D:
    """Uniformly random planar G-polymer for the edge lengths of ``graph``."""
    if not graph.is_connected():
        raise DomainError("graph must be connected")
    order = default_order(graph) if order is None else list(order)
    _check_order(graph, order)
    seed = rng if isinstance(rng, (int, np.integer)) else None
    state = _sample_state(graph, order, _rng(rng), history=history)
    return state.to_polymer(seed)


def sample_crossing_inductive_tree(n: int, rng=None) -> Polymer2D:
    """Touching unit disks with increasing labels from the root; overlaps allowed."""
    if n < 1:
        raise DomainError("n must be at least 1")
    rng = _rng(rng)
    parent, pos = {}, np.zeros((n, 2))
    for k in range(2, n + 1):
        p = int(rng.integers(1, k))
        th = rng.uniform(0.0, TAU)
        parent[k] = p
        pos[k - 1] = pos[p - 1] + 2.0 * np.array([math.cos(th), math.sin(th)])
    return Polymer2D(tuple(range(1, n + 1)), pos, RootedTree(1, parent), tuple([1.0] * n))
