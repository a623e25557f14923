"""
Polymers of spheres in 3D
=========================

The x-coordinates of a uniform 3D polymer come from a random labelled tree
with uniform edge weights; the yz-plane holds a planar polymer of the graph
of x-neighbours.  Consequently the x-extent grows like sqrt(n).
"""

from pathlib import Path

import numpy as np

from branchpoly import io
from branchpoly.sampler3d import b_vector_law, sample_polymer_3d
from branchpoly.verification import diameter_scaling, ks_two_sample

out = Path("demo_output")
out.mkdir(exist_ok=True)

p = sample_polymer_3d(30, rng=4)
io.check_polymer(p)
print("smallest centre distance:", round(min(p.norms().values()), 12))
(out / "spheres30.svg").write_text(io.render_svg(p))

# sorted x-coordinates of the sampler against direct draws of their law
rng = np.random.default_rng(5)
xs = np.array([sample_polymer_3d(5, rng).positions[:, 0] for _ in range(3000)])
b = np.sort(xs - xs.min(axis=1, keepdims=True), axis=1)
law = b_vector_law(5, rng, size=30_000)
print("KS distance of the x-extent:", round(ks_two_sample(b[:, -1], law[:, -1]).statistic, 4))

fit = diameter_scaling([50, 100, 200, 400], 200, rng=6)
print(f"log-log slope of mean extent: {fit.slope:.3f}")
