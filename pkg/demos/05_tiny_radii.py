"""
Very different radii
====================

With radii eps, eps^2, eps^3, ... each new disk is tiny next to the ones
already placed, so it nearly always ends up touching an earlier disk and the
tangency tree is label-increasing.  "Nearly always" is not "always": a small
share of the uniform law has a later disk bridging between two earlier ones,
and that share shrinks only like sqrt(eps).
"""

import numpy as np

from branchpoly.sampler2d import sample_polymer_2d
from branchpoly.verification import rejection_sample_2d


def increasing(parent):
    return all(c > q for c, q in parent.items())


rng = np.random.default_rng(7)
for eps in (1e-2, 1e-3, 1e-4, 1e-5):
    radii = [1.0, eps, eps**2]
    count = 10_000
    frac = sum(increasing(sample_polymer_2d(3, radii, rng).tree.parent) for _ in range(count)) / count
    print(f"eps={eps:g}: sampler {frac:.4f}   rough guide 1 - sqrt(eps)/pi = {1 - np.sqrt(eps) / np.pi:.4f}")

# the brute-force sampler agrees: it knows nothing about growth
ref = rejection_sample_2d(3, [1.0, 1e-3, 1e-6], 1_000_000, rng)
bridged = sum(1 for t in ref.trees if set(t) == {(1, 3), (2, 3)})
print(f"rejection oracle, eps=1e-3: {1 - bridged / len(ref.trees):.4f} label-increasing")
