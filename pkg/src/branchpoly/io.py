"""JSON/CSV serialization, graph files and SVG figures."""

from __future__ import annotations

import csv
import io as _io
import json
import math
import re
import xml.etree.ElementTree as ET
from typing import Optional, Union

import numpy as np

from .exceptions import DomainError, StructureError
from .geometry import RootedTree, WeightedGraph, GAP_TOL, edge_key, gap_tolerance
from .sampler2d import Polymer2D
from .sampler3d import Polymer3D

Polymer = Union[Polymer2D, Polymer3D]


# -- JSON --------------------------------------------------------------------


def polymer_to_dict(p: Polymer) -> dict:
    tree_parent = {str(c): int(q) for c, q in sorted(p.tree.parent.items())}
    edges = [list(e) for e in p.tangency_edges]
    if isinstance(p, Polymer3D):
        beta = None
        if p.beta is not None:
            beta = [[a, b, float(v)] for (a, b), v in sorted(p.beta.items())]
        return {
            "kind": "polymer3d",
            "n": p.n,
            "positions": p.positions.tolist(),
            "tree_parent": tree_parent,
            "tangency_edges": edges,
            "beta": beta,
            "root": int(p.root),
            "seed": p.seed,
        }
    d = {
        "kind": "polymer2d",
        "n": p.n,
        "labels": list(p.labels),
        "radii": None if p.radii is None else list(p.radii),
        "positions": p.positions.tolist(),
        "tree_parent": tree_parent,
        "tangency_edges": edges,
        "seed": p.seed,
    }
    if p.graph is not None:
        d["graph"] = [[a, b, float(r)] for (a, b), r in sorted(p.graph.lengths.items())]
    return d


def polymer_from_dict(d: dict) -> Polymer:
    try:
        parent = {int(c): int(q) for c, q in d["tree_parent"].items()}
        positions = np.asarray(d["positions"], dtype=float)
        kind = d.get("kind", "polymer3d" if positions.shape[-1] == 3 else "polymer2d")
        if kind == "polymer3d":
            beta = None if d.get("beta") is None else {edge_key(a, b): float(v) for a, b, v in d["beta"]}
            return Polymer3D(positions, RootedTree(1, parent), beta, int(d["root"]), d.get("seed"))
        labels = tuple(d.get("labels") or range(1, d["n"] + 1))
        graph = None
        if d.get("graph") is not None:
            graph = WeightedGraph(labels, {edge_key(a, b): float(r) for a, b, r in d["graph"]})
        radii = None if d.get("radii") is None else tuple(float(r) for r in d["radii"])
        return Polymer2D(labels, positions, RootedTree(labels[0], parent), radii, graph, d.get("seed"))
    except (KeyError, TypeError, ValueError) as exc:
        raise StructureError(f"malformed polymer record: {exc}") from exc


def dumps(p: Polymer) -> str:
    return json.dumps(polymer_to_dict(p), indent=1)


def loads(text: str) -> Polymer:
    return polymer_from_dict(json.loads(text))


def to_csv(p: Polymer) -> str:
    """One row per vertex: label, coordinates, radius (2D), parent."""
    buf = _io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    dim = p.positions.shape[1]
    w.writerow(["label"] + ["x", "y", "z"][:dim] + (["radius"] if dim == 2 else []) + ["parent"])
    labels = p.labels if isinstance(p, Polymer2D) else tuple(range(1, p.n + 1))
    for i, v in enumerate(labels):
        row = [v] + [repr(float(c)) for c in p.positions[i]]
        if dim == 2:
            row.append("" if p.radii is None else repr(float(p.radii[i])))
        row.append(p.tree.parent.get(v, ""))
        w.writerow(row)
    return buf.getvalue()


# -- graphs ------------------------------------------------------------------


def parse_graph_file(text: str) -> WeightedGraph:
    """Edge list, one ``i j [r] [beta]`` per line; ``#`` starts a comment."""
    lengths, betas, verts = {}, {}, set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) < 2 or len(parts) > 4:
            raise StructureError(f"line {lineno}: expected 'i j [r] [beta]'")
        try:
            i, j = int(parts[0]), int(parts[1])
            r = float(parts[2]) if len(parts) > 2 else 1.0
            b = float(parts[3]) if len(parts) > 3 else 1.0
        except ValueError as exc:
            raise StructureError(f"line {lineno}: {exc}") from exc
        key = edge_key(i, j)
        if key in lengths:
            raise StructureError(f"line {lineno}: duplicate edge {key}")
        lengths[key] = r
        if b != 1.0:
            betas[key] = b
        verts.update(key)
    if not verts:
        raise StructureError("graph file has no edges")
    return WeightedGraph(tuple(sorted(verts)), lengths, betas)


_FAMILY = re.compile(r"^(Kn|Cn|Pn|Kmn):(\d+(?:,\d+)*)$")


def parse_graph_spec(spec: str) -> WeightedGraph:
    """``Kn:5``, ``Cn:7``, ``Pn:4`` or ``Kmn:3,4`` (any number of parts)."""
    m = _FAMILY.match(spec.strip())
    if not m:
        raise StructureError(f"unknown graph family {spec!r}; use Kn:5, Cn:7, Pn:4 or Kmn:3,4")
    fam, args = m.group(1), [int(a) for a in m.group(2).split(",")]
    if fam == "Kmn":
        if len(args) < 2:
            raise StructureError("Kmn needs at least two part sizes")
        return WeightedGraph.complete_multipartite(args)
    if len(args) != 1:
        raise StructureError(f"{fam} takes one size")
    (k,) = args
    if fam == "Kn":
        return WeightedGraph.complete(k)
    if fam == "Cn":
        return WeightedGraph.cycle(k)
    return WeightedGraph.path(k)


# -- SVG ---------------------------------------------------------------------

SVG_NS = "http://www.w3.org/2000/svg"


def _fmt(v: float) -> str:
    return f"{v:.4f}"


def _panel(parent, x0, y0, size, pts, radii, edges, title):
    """Scale 2D points into a square panel; returns the group element."""
    g = ET.SubElement(parent, "g", {"class": "panel"})
    t = ET.SubElement(g, "text", {"x": _fmt(x0 + 4), "y": _fmt(y0 + 14), "font-size": "12"})
    t.text = title
    pts = np.asarray(pts, dtype=float)
    r = np.asarray(radii, dtype=float)
    lo = (pts - r[:, None]).min(axis=0)
    hi = (pts + r[:, None]).max(axis=0)
    span = max(float((hi - lo).max()), 1e-12)
    pad = 20.0
    scale = (size - 2 * pad) / span
    off = np.array([x0 + pad, y0 + pad]) + ((size - 2 * pad) - (hi - lo) * scale) / 2

    def map_pt(p):
        q = off + (p - lo) * scale
        return q[0], y0 + size - (q[1] - y0)  # y up

    for a, b in edges:
        (xa, ya), (xb, yb) = map_pt(pts[a]), map_pt(pts[b])
        ET.SubElement(
            g, "line",
            {"x1": _fmt(xa), "y1": _fmt(ya), "x2": _fmt(xb), "y2": _fmt(yb), "stroke": "#333", "stroke-width": "1"},
        )
    for p, rad in zip(pts, r):
        cx, cy = map_pt(p)
        ET.SubElement(
            g, "circle",
            {"cx": _fmt(cx), "cy": _fmt(cy), "r": _fmt(max(rad * scale, 0.5)), "fill": "none", "stroke": "#1f5fa8"},
        )
    return g


def render_svg(p: Polymer, size: float = 600.0, title: Optional[str] = None) -> str:
    """Circles and tree edges for 2D polymers; x-axis and yz panels for 3D ones."""
    root = ET.Element("svg", {"xmlns": SVG_NS, "version": "1.1"})
    if isinstance(p, Polymer3D):
        width, height = 2 * size, size
        idx = {v: v - 1 for v in range(1, p.n + 1)}
        edges = [(idx[a], idx[b]) for a, b in p.tangency_edges]
        xs = np.stack([p.positions[:, 0], np.zeros(p.n)], axis=1)
        half = np.full(p.n, 0.5)
        _panel(root, 0, 0, size, xs, half, [], "x projection")
        yz = half
        if p.beta and p.n > 1:
            # widest contact footprint of each spheroid
            yz = np.array([0.5 / math.sqrt(min(p.beta_of(v, w) for w in range(1, p.n + 1) if w != v)) for v in range(1, p.n + 1)])
        _panel(root, size, 0, size, p.positions[:, 1:], yz, edges, "yz projection")
    else:
        width = height = size
        idx = {v: i for i, v in enumerate(p.labels)}
        edges = [(idx[a], idx[b]) for a, b in p.tangency_edges]
        if p.radii is not None:
            radii = np.asarray(p.radii)
        else:
            short = min(p.graph.lengths.values()) if p.graph is not None and p.graph.lengths else 1.0
            radii = np.full(p.n, 0.15 * short)
        _panel(root, 0, 0, size, p.positions, radii, edges, title or f"{p.n} vertices")
    root.set("width", _fmt(width))
    root.set("height", _fmt(height))
    root.set("viewBox", f"0 0 {_fmt(width)} {_fmt(height)}")
    return ET.tostring(root, encoding="unicode")


def svg_counts(svg: str) -> dict:
    """Number of circle and line elements, and panels, in an SVG string."""
    tree = ET.fromstring(svg)
    tag = lambda name: f"{{{SVG_NS}}}{name}"
    return {
        "circle": len(tree.findall(f".//{tag('circle')}")),
        "line": len(tree.findall(f".//{tag('line')}")),
        "panel": len([g for g in tree.iter(tag("g")) if g.get("class") == "panel"]),
    }


def check_polymer(p: Polymer, tol: float = GAP_TOL) -> None:
    """Raise DomainError unless every constraint holds and tree edges are tight."""
    if isinstance(p, Polymer3D):
        for (a, b), v in p.norms().items():
            if v < 1 - tol:
                raise DomainError(f"spheres {a}, {b} overlap: norm {v}")
        norms = p.norms()
        for e in p.tangency_edges:
            if abs(norms[e] - 1) > tol:
                raise DomainError(f"tree edge {e} is not tight")
        return
    idx = {v: i for i, v in enumerate(p.labels)}
    if p.graph is not None:
        req = dict(p.graph.lengths)
    else:
        req = {edge_key(a, b): p.radii[idx[a]] + p.radii[idx[b]] for a in p.labels for b in p.labels if a < b}
    tree = set(p.tangency_edges)
    scale = p.n * max(req.values(), default=1.0)
    for (a, b), r in req.items():
        d = float(np.linalg.norm(p.positions[idx[a]] - p.positions[idx[b]]))
        slack = gap_tolerance(r, scale) * tol / GAP_TOL
        if d < r - slack:
            raise DomainError(f"pair {a}, {b} violates its bound: {d} < {r}")
        if (a, b) in tree and abs(d - r) > slack:
            raise DomainError(f"tree edge {(a, b)} is not tight")
