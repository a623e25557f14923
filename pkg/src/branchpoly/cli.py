"""Command line: ``branchpoly sample2d|sample3d|mu|verify``."""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from pathlib import Path
from typing import Callable, Dict, List, Optional

import numpy as np

from . import io
from .exceptions import PolymerError
from .geometry import WeightedGraph
from .invariants import mu, mu_safe_trees, mu_subgraph_sum, tutte_mu
from .sampler2d import sample_gpolymer, sample_polymer_2d
from .sampler3d import b_vector_law, sample_polymer_3d
from .verification import (
    TrialReport,
    acceptance_report,
    diameter_scaling,
    ks_two_sample,
    rejection_sample_3d,
    walk_return_probability,
)


def _seed(args) -> int:
    if args.seed is None:
        args.seed = int(np.random.SeedSequence().entropy % (2**32))
    print(f"seed: {args.seed}", file=sys.stderr)
    return args.seed


def _write(text: str, path: Optional[str]):
    if path is None or path == "-":
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
    else:
        Path(path).write_text(text)


def _emit(poly, args, stem: str):
    _write(io.dumps(poly), args.out)
    base = Path(args.out).with_suffix("") if args.out not in (None, "-") else Path(stem)
    if args.svg is not None:
        _write(io.render_svg(poly), args.svg or f"{base}.svg")
    if args.csv is not None:
        _write(io.to_csv(poly), args.csv or f"{base}.csv")


def _load_graph(spec: str) -> WeightedGraph:
    p = Path(spec)
    if p.exists():
        return io.parse_graph_file(p.read_text())
    return io.parse_graph_spec(spec)


def cmd_sample2d(args) -> int:
    seed = _seed(args)
    if args.graph:
        poly = sample_gpolymer(_load_graph(args.graph), rng=seed)
    else:
        radii = None
        if args.radii:
            radii = [float(r) for r in args.radii.split(",")]
            if args.n is None:
                args.n = len(radii)
        poly = sample_polymer_2d(args.n or 10, radii, rng=seed)
    _emit(poly, args, f"polymer2d_{seed}")
    return 0


def cmd_sample3d(args) -> int:
    seed = _seed(args)
    poly = sample_polymer_3d(args.n, rng=seed, beta=args.beta)
    _emit(poly, args, f"polymer3d_{seed}")
    return 0


def cmd_mu(args) -> int:
    g = _load_graph(args.graph)
    value = mu(g)
    print(value)
    if args.check:
        checks = {"safe-trees": lambda: mu_safe_trees(g).value, "tutte": lambda: tutte_mu(g).value}
        if g.m <= 24:
            checks["subgraph-sum"] = lambda: mu_subgraph_sum(g).value
        ok = True
        for name, fn in checks.items():
            v = fn()
            ok &= v == value
            print(f"  {name}: {v}", file=sys.stderr)
        return 0 if ok else 1
    return 0


# -- verify ------------------------------------------------------------------


def _result(name: str, passed: bool, **details) -> dict:
    return {"name": name, "passed": bool(passed), **details}


def _from_report(r: TrialReport) -> dict:
    return _result(r.name, r.passed(), estimate=r.estimate, target=r.target, stderr=r.stderr, z=r.z, trials=r.trials)


def suite_walk(args) -> List[dict]:
    ns = [args.n] if args.n else range(2, 7)
    return [_from_report(walk_return_probability(n, args.trials, rng=np.random.default_rng([args.seed, 1, n]))) for n in ns]


def suite_accept2d(args) -> List[dict]:
    ns = [args.n] if args.n else (3, 4)
    return [_from_report(acceptance_report("2d", args.trials, [args.seed, 2, n], n=n)) for n in ns]


def suite_acceptg(args) -> List[dict]:
    graphs = [args.graph] if args.graph else ["Cn:4", "Kn:3"]
    out = []
    for i, spec in enumerate(graphs):
        r = acceptance_report("g", args.trials, [args.seed, 3, i], graph=_load_graph(spec))
        r.name = f"acceptg {spec}"
        out.append(_from_report(r))
    return out


def suite_accept3d(args) -> List[dict]:
    ns = [args.n] if args.n else (3, 4)
    return [_from_report(acceptance_report("3d", args.trials, [args.seed, 4, n], n=n)) for n in ns]


def suite_btree(args) -> List[dict]:
    """Sorted x-projections of rejection-sampled 3D polymers against the B law."""
    n = args.n or 3
    want = args.samples
    bound = 0.015 * math.sqrt(1e5 / want)
    rng = np.random.default_rng([args.seed, 5, n])
    rate = n / 2 ** (n - 1)
    acc = []
    got = 0
    while got < want:
        batch = rejection_sample_3d(n, int((want - got) / rate * 1.1) + 100, rng)
        acc.append(batch.positions)
        got += len(batch.positions)
    x = np.concatenate(acc)[:want, :, 0]
    b_oracle = np.sort(x - x.min(axis=1, keepdims=True), axis=1)
    b_law = b_vector_law(n, rng, size=want)
    out = []
    for j in range(1, n):
        ks = ks_two_sample(b_oracle[:, j], b_law[:, j])
        out.append(_result(f"btree n={n} b_{j + 1}", ks.statistic < bound, ks=ks.statistic, bound=bound, p=ks.pvalue))
    return out


def suite_diameter(args) -> List[dict]:
    ns = [50, 100, 200, 400, 800]
    fit = diameter_scaling(ns, args.samples // 250 or 40, rng=np.random.default_rng([args.seed, 6]))
    return [_result("diameter b-vector slope", 0.4 <= fit.slope <= 0.6, slope=fit.slope, means=fit.means)]


def suite_limit(args) -> List[dict]:
    """Share of label-increasing tangency trees with radii eps^i."""
    n = args.n or 5
    radii = [args.eps**i for i in range(1, n + 1)]
    rng = np.random.default_rng([args.seed, 7, n])
    count = max(1, args.samples // 10)
    inc = 0
    for _ in range(count):
        p = sample_polymer_2d(n, radii, rng)
        inc += all(c > q for c, q in p.tree.parent.items())
    frac = inc / count
    return [_result(f"limit eps={args.eps:g} n={n}", frac >= 0.99, fraction=frac, samples=count)]


SUITES: Dict[str, Callable] = {
    "walk": suite_walk,
    "accept2d": suite_accept2d,
    "acceptg": suite_acceptg,
    "accept3d": suite_accept3d,
    "btree": suite_btree,
    "diameter": suite_diameter,
    "limit": suite_limit,
}


def cmd_verify(args) -> int:
    if args.seed is None:
        args.seed = 0
    if args.trials is None:
        args.trials = 10**5 if args.quick else 10**6
    args.samples = 2 * 10**4 if args.quick else 10**5
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = []
    for name in names:
        t0 = time.time()
        for r in SUITES[name](args):
            r["seconds"] = round(time.time() - t0, 2)
            results.append(r)
            if args.json:
                print(json.dumps(r, default=float))
            else:
                mark = "PASS" if r["passed"] else "FAIL"
                info = ", ".join(f"{k}={v:.6g}" if isinstance(v, float) else f"{k}={v}" for k, v in r.items() if k not in ("name", "passed", "means"))
                print(f"{mark}  {r['name']}: {info}")
    return 0 if all(r["passed"] for r in results) else 1


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="branchpoly", description="Sample branched polymers and check their laws.")
    sub = ap.add_subparsers(dest="command", required=True)

    def outputs(p):
        p.add_argument("--seed", type=int, help="random seed (printed to stderr; generated if omitted)")
        p.add_argument("--out", help="JSON output path (default: stdout)")
        p.add_argument("--svg", nargs="?", const="", help="also write an SVG figure (optional path)")
        p.add_argument("--csv", nargs="?", const="", help="also write a CSV table (optional path)")

    p = sub.add_parser("sample2d", help="uniform planar polymer of disks or G-polymer")
    p.add_argument("--n", type=int, help="number of disks (default 10)")
    p.add_argument("--radii", help="comma-separated radii")
    p.add_argument("--graph", help="graph file or family (Kn:5, Cn:7, Kmn:3,4) for a G-polymer")
    outputs(p)
    p.set_defaults(func=cmd_sample2d)

    p = sub.add_parser("sample3d", help="uniform 3D polymer of unit-diameter spheres")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--beta", type=float, help="spheroid weight for every pair (default 1)")
    outputs(p)
    p.set_defaults(func=cmd_sample3d)

    p = sub.add_parser("mu", help="configuration-space invariant of a graph")
    p.add_argument("graph", help="graph file or family spec")
    p.add_argument("--check", action="store_true", help="cross-check with the other algorithms")
    p.set_defaults(func=cmd_mu)

    p = sub.add_parser("verify", help="run a verification suite; exit 1 if any check fails")
    p.add_argument("suite", choices=sorted(SUITES) + ["all"])
    p.add_argument("--n", type=int)
    p.add_argument("--graph")
    p.add_argument("--trials", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--eps", type=float, default=1e-3)
    p.add_argument("--quick", action="store_true", help="reduced sample sizes")
    p.add_argument("--json", action="store_true", help="one JSON object per check")
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PolymerError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
