"""Independent oracles and statistics used to check the samplers.

The rejection samplers here share no geometry code with the exact samplers:
trees come from brute-force edge subsets and validity is a plain pairwise
distance check.
"""

from __future__ import annotations

import itertools
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import stats

from .exceptions import DomainError
from .geometry import WeightedGraph
from .invariants import BetaSpec, _beta_lookup, gamma_product, interval_graph, mu_safe_trees

CHUNK = 1 << 16


@dataclass
class TrialReport:
    name: str
    trials: int
    successes: int
    target: Optional[float] = None
    details: Dict[str, object] = field(default_factory=dict)

    @property
    def estimate(self) -> float:
        return self.successes / self.trials if self.trials else float("nan")

    @property
    def stderr(self) -> float:
        p = self.estimate
        return math.sqrt(p * (1 - p) / self.trials) if self.trials else float("nan")

    @property
    def z(self) -> Optional[float]:
        if self.target is None:
            return None
        # use the target's standard error so that exact hits (p = 0 or 1) are handled
        se = math.sqrt(self.target * (1 - self.target) / self.trials)
        if se == 0:
            return 0.0 if self.estimate == self.target else math.inf
        return (self.estimate - self.target) / se

    def passed(self, sigmas: float = 3.0) -> bool:
        return self.z is None or abs(self.z) <= sigmas

    def merge(self, other: "TrialReport") -> "TrialReport":
        if (self.name, self.target) != (other.name, other.target):
            raise DomainError("can only merge reports of the same check")
        return TrialReport(self.name, self.trials + other.trials, self.successes + other.successes, self.target)

    def to_dict(self) -> dict:
        d = asdict(self)
        d.update(estimate=self.estimate, stderr=self.stderr, z=self.z, passed=self.passed())
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, default=float)


def thread_count() -> int:
    env = os.environ.get("POLYMER_THREADS")
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def run_batches(func: Callable[[int, np.random.Generator], TrialReport], trials: int, seed=None, chunk: int = CHUNK):
    """Split ``trials`` into chunks on spawned streams and merge the reports.

    The result depends only on ``seed`` and ``chunk``, not on the thread count.
    """
    ss = seed if isinstance(seed, np.random.SeedSequence) else np.random.SeedSequence(seed)
    sizes = [chunk] * (trials // chunk) + ([trials % chunk] if trials % chunk else [])
    streams = [np.random.default_rng(s) for s in ss.spawn(len(sizes))]
    workers = min(thread_count(), len(sizes)) or 1
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            parts = list(pool.map(func, sizes, streams))
    else:
        parts = [func(k, r) for k, r in zip(sizes, streams)]
    out = parts[0]
    for p in parts[1:]:
        out = out.merge(p)
    return out


# ---------------------------------------------------------------------------
# brute-force trees


def enumerate_spanning_trees(vertices: Sequence[int], edges: Sequence[Tuple[int, int]]) -> List[Tuple[Tuple[int, int], ...]]:
    """All spanning trees, by testing every (n-1)-subset of edges."""
    vertices = list(vertices)
    out = []
    for sub in itertools.combinations(sorted(edges), len(vertices) - 1):
        adj = {v: [] for v in vertices}
        for a, b in sub:
            adj[a].append(b)
            adj[b].append(a)
        seen, stack = {vertices[0]}, [vertices[0]]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) == len(vertices):
            out.append(sub)
    return out


class _TreeTable:
    """Spanning trees as parent arrays rooted at index 0, with BFS orders."""

    def __init__(self, vertices: Sequence[int], edges: Sequence[Tuple[int, int]]):
        self.vertices = list(vertices)
        idx = {v: i for i, v in enumerate(self.vertices)}
        self.trees = enumerate_spanning_trees(self.vertices, edges)
        n = len(self.vertices)
        self.parent = np.zeros((len(self.trees), n), dtype=np.intp)
        self.order = np.zeros((len(self.trees), n), dtype=np.intp)
        for t, sub in enumerate(self.trees):
            adj = {i: [] for i in range(n)}
            for a, b in sub:
                adj[idx[a]].append(idx[b])
                adj[idx[b]].append(idx[a])
            order, par = [0], {0: 0}
            for u in order:
                for w in sorted(adj[u]):
                    if w not in par:
                        par[w] = u
                        order.append(w)
            self.order[t] = order
            self.parent[t] = [par[i] for i in range(n)]

    def positions(self, which: np.ndarray, steps: np.ndarray, lengths: np.ndarray) -> np.ndarray:
        """Chain steps along each chosen tree.

        ``steps`` has shape (k, n, d): unit step for vertex v (row 0 unused);
        ``lengths`` is an (n, n) array of edge lengths.
        """
        k, n, d = steps.shape
        par = self.parent[which]
        order = self.order[which]
        rows = np.arange(k)
        P = np.zeros((k, n, d))
        for s in range(1, n):
            v = order[:, s]
            p = par[rows, v]
            P[rows, v] = P[rows, p] + lengths[p, v][:, None] * steps[rows, v]
        return P


def _valid(P: np.ndarray, par: np.ndarray, required: np.ndarray, norm=None) -> np.ndarray:
    k, n, _ = P.shape
    ok = np.ones(k, dtype=bool)
    for a in range(n):
        for b in range(a + 1, n):
            if required[a, b] <= 0:
                continue
            tree_edge = (par[:, b] == a) | (par[:, a] == b)
            diff = P[:, b] - P[:, a]
            dist = np.sqrt((diff ** 2).sum(axis=1)) if norm is None else norm(diff, a, b)
            ok &= tree_edge | (dist > required[a, b])
    return ok


@dataclass
class RejectionBatch:
    report: TrialReport
    positions: np.ndarray  # (accepted, n, d), rows in vertex order
    trees: List[Tuple[Tuple[int, int], ...]]  # tree of each accepted sample
    vertices: List[int]


def _rejection(
    table: _TreeTable, required: np.ndarray, dim: int, trials: int, rng, name: str, target, steps_fn, shape=None, norm=None
):
    n = len(table.vertices)
    pos, trees = [], []
    succ = 0
    done = 0
    while done < trials:
        k = min(CHUNK, trials - done)
        which = rng.integers(0, len(table.trees), size=k)
        steps = steps_fn(rng, k, n)
        par = table.parent[which]
        if shape is not None:
            steps = shape(par, steps)
        P = table.positions(which, steps, required)
        ok = _valid(P, par, required, norm)
        succ += int(ok.sum())
        pos.append(P[ok])
        trees.extend(table.trees[t] for t in which[ok])
        done += k
    allpos = np.concatenate(pos) if pos else np.zeros((0, n, dim))
    return RejectionBatch(TrialReport(name, trials, succ, target), allpos, trees, table.vertices)


def _planar_steps(rng, k, n):
    th = rng.uniform(0.0, 2 * math.pi, size=(k, n))
    return np.stack([np.cos(th), np.sin(th)], axis=-1)


def _sphere_steps(rng, k, n):
    x = rng.uniform(-1.0, 1.0, size=(k, n))
    phi = rng.uniform(0.0, 2 * math.pi, size=(k, n))
    rho = np.sqrt(1.0 - x * x)
    return np.stack([x, rho * np.cos(phi), rho * np.sin(phi)], axis=-1)


def rejection_sample_2d(n: int, radii: Optional[Sequence[float]] = None, trials: int = 1, rng=None) -> RejectionBatch:
    """Uniform labelled tree + uniform angles; keep configurations without overlaps."""
    if n < 1 or n > 7:
        raise DomainError("rejection oracle supports 1 <= n <= 7")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    radii = np.ones(n) if radii is None else np.asarray(radii, dtype=float)
    req = radii[:, None] + radii[None, :]
    np.fill_diagonal(req, 0.0)
    table = _cached_table(tuple(range(1, n + 1)), tuple(itertools.combinations(range(1, n + 1), 2)))
    target = math.factorial(n - 1) / n ** (n - 2)  # the same for any radii
    return _rejection(table, req, 2, trials, rng, f"accept2d n={n}", target, _planar_steps)


def rejection_sample_gpolymer(graph: WeightedGraph, trials: int = 1, rng=None) -> RejectionBatch:
    """Uniform spanning tree of G + uniform angles; keep configurations meeting every bound."""
    if graph.n > 7:
        raise DomainError("rejection oracle supports at most 7 vertices")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    verts = list(graph.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    req = np.zeros((graph.n, graph.n))
    for (a, b), r in graph.lengths.items():
        req[idx[a], idx[b]] = req[idx[b], idx[a]] = r
    table = _cached_table(tuple(verts), tuple(graph.edges))
    if not table.trees:
        raise DomainError("graph is disconnected")
    target = mu_safe_trees(graph).value / len(table.trees)
    return _rejection(table, req, 2, trials, rng, f"acceptg {graph.key()[:2]}", target, _planar_steps)


def rejection_sample_3d(n: int, trials: int = 1, rng=None, beta: BetaSpec = None) -> RejectionBatch:
    """Uniform labelled tree + uniform unit directions; keep non-overlapping unit-diameter spheres.

    With ``beta`` the bodies are spheroids: a contact step keeps its x part
    (uniform on [-1, 1]) and its yz part is shrunk by 1/sqrt(beta) of the
    pair, and overlaps are judged in the pair's beta-norm.
    """
    if n < 1 or n > 6:
        raise DomainError("rejection oracle supports 1 <= n <= 6")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    req = np.ones((n, n))
    np.fill_diagonal(req, 0.0)
    table = _cached_table(tuple(range(1, n + 1)), tuple(itertools.combinations(range(1, n + 1), 2)))
    shape = norm = None
    if beta is not None:
        look = _beta_lookup(beta)
        B = np.ones((n, n))
        for a, b in itertools.combinations(range(n), 2):
            B[a, b] = B[b, a] = look(a + 1, b + 1)
        inv = 1.0 / np.sqrt(B)
        cols = np.arange(n)

        def shape(par, steps):
            steps[:, :, 1:] *= inv[par, cols][:, :, None]
            return steps

        def norm(diff, a, b):
            return np.sqrt(diff[:, 0] ** 2 + B[a, b] * (diff[:, 1] ** 2 + diff[:, 2] ** 2))

    return _rejection(table, req, 3, trials, rng, f"accept3d n={n}", n / 2 ** (n - 1), _sphere_steps, shape, norm)


_TABLES: Dict[tuple, _TreeTable] = {}


def _cached_table(vertices: tuple, edges: tuple) -> _TreeTable:
    key = (vertices, edges)
    if key not in _TABLES:
        _TABLES[key] = _TreeTable(vertices, edges)
    return _TABLES[key]


def acceptance_report(kind: str, trials: int, seed=None, n: int = 3, graph: Optional[WeightedGraph] = None):
    """Acceptance-rate check merged over seeded chunks."""

    def one(k, rng):
        if kind == "2d":
            return rejection_sample_2d(n, None, k, rng).report
        if kind == "3d":
            return rejection_sample_3d(n, k, rng).report
        if kind == "g":
            return rejection_sample_gpolymer(graph, k, rng).report
        raise DomainError(f"unknown oracle {kind!r}")

    return run_batches(one, trials, seed)


# ---------------------------------------------------------------------------
# random flights


def walk_return_probability(n: int, trials: int, rng=None) -> TrialReport:
    """Fraction of n-step planar unit random walks ending within distance 1 of the start."""
    if n < 2:
        raise DomainError("n must be at least 2")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    hits = 0
    done = 0
    while done < trials:
        k = min(CHUNK * 4, trials - done)
        th = rng.uniform(0.0, 2 * math.pi, size=(k, n))
        x = np.cos(th).sum(axis=1)
        y = np.sin(th).sum(axis=1)
        hits += int((x * x + y * y <= 1.0).sum())
        done += k
    return TrialReport(f"walk n={n}", trials, hits, 1.0 / (n + 1))


def walk_return_closed_form_n2() -> float:
    """Two unit steps end within 1 iff their angle gap lies in [2pi/3, 4pi/3]."""
    return (4 * math.pi / 3 - 2 * math.pi / 3) / (2 * math.pi)


# ---------------------------------------------------------------------------
# distribution comparison


@dataclass
class KSResult:
    statistic: float
    pvalue: float


def ks_two_sample(a, b) -> KSResult:
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size == 0 or b.size == 0:
        raise DomainError("both samples must be nonempty")
    r = stats.ks_2samp(a, b)
    return KSResult(float(r.statistic), float(r.pvalue))


def chi2_same_law(labels_a: Sequence, labels_b: Sequence) -> Tuple[float, float]:
    """Chi-square homogeneity test of two categorical samples; returns (statistic, p)."""
    cats = sorted(set(labels_a) | set(labels_b))
    if len(cats) < 2:
        return 0.0, 1.0
    pos = {c: i for i, c in enumerate(cats)}
    table = np.zeros((2, len(cats)))
    for lab in labels_a:
        table[0, pos[lab]] += 1
    for lab in labels_b:
        table[1, pos[lab]] += 1
    res = stats.chi2_contingency(table, correction=False)
    return float(res[0]), float(res[1])


def chi2_uniform(labels: Sequence, categories: Sequence) -> Tuple[float, float]:
    """Chi-square goodness of fit against the uniform law on ``categories``."""
    pos = {c: i for i, c in enumerate(categories)}
    counts = np.zeros(len(categories))
    for lab in labels:
        counts[pos[lab]] += 1
    res = stats.chisquare(counts)
    return float(res.statistic), float(res.pvalue)


def radius_of_gyration(P: np.ndarray) -> np.ndarray:
    """sqrt of mean squared distance to the centroid; P has shape (..., n, d)."""
    c = P - P.mean(axis=-2, keepdims=True)
    return np.sqrt((c ** 2).sum(axis=-1).mean(axis=-1))


# ---------------------------------------------------------------------------
# scaling


@dataclass
class ScalingFit:
    ns: List[int]
    means: List[float]
    slope: float
    intercept: float


def loglog_slope(ns: Sequence[float], values: Sequence[float]) -> Tuple[float, float]:
    x = np.log(np.asarray(ns, dtype=float))
    y = np.log(np.asarray(values, dtype=float))
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def diameter_scaling(ns: Sequence[int], samples_per_n: int, rng=None, method: str = "b_vector") -> ScalingFit:
    """Least-squares slope of log(mean x-extent) against log(n)."""
    from .sampler3d import b_vector_law, sample_polymer_3d

    ns = [int(k) for k in ns]
    if len(ns) < 3 or any(b <= a for a, b in zip(ns, ns[1:])):
        raise DomainError("need at least three increasing sizes")
    rng = np.random.default_rng(rng) if not isinstance(rng, np.random.Generator) else rng
    means = []
    for n in ns:
        if method == "b_vector":
            b = b_vector_law(n, rng, size=samples_per_n)
            means.append(float((b[:, -1] - b[:, 0]).mean()))
        elif method == "sampler":
            ext = []
            for _ in range(samples_per_n):
                x = sample_polymer_3d(n, rng).positions[:, 0]
                ext.append(x.max() - x.min())
            means.append(float(np.mean(ext)))
        else:
            raise DomainError(f"unknown method {method!r}")
    slope, intercept = loglog_slope(ns, means)
    return ScalingFit(ns, means, slope, intercept)


# ---------------------------------------------------------------------------
# projection types


@dataclass
class TypeVolumeReport:
    xs: Tuple[float, ...]
    gamma: int
    safe_trees: int
    spanning_trees: int
    acceptance: Optional[TrialReport] = None

    @property
    def consistent(self) -> bool:
        ok = self.gamma == self.safe_trees
        return ok and (self.acceptance is None or self.acceptance.passed())


def type_volume_check(xs: Sequence[float], trials: int = 0, rng=None) -> TypeVolumeReport:
    """Compare the gamma product with the safe-tree count of the interval graph.

    With ``trials`` > 0, also estimate the rate at which a uniform spanning
    tree with uniform angles realises a valid polymer of the interval graph.
    """
    xs = tuple(float(x) for x in xs)
    H = interval_graph(xs)
    if not H.is_connected():
        raise DomainError("interval graph of xs is disconnected")
    g = gamma_product(xs)
    mu_h = mu_safe_trees(H).value
    acc = None
    ntrees = len(_cached_table(tuple(H.vertices), tuple(H.edges)).trees)
    if trials:
        acc = rejection_sample_gpolymer(H, trials, rng).report
    return TypeVolumeReport(xs, g, mu_h, ntrees, acc)
