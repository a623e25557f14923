"""
One growth event, step by step
==============================

Three unit disks sit at (0,0), (2,0) and (0,2).  A fourth disk grows straight
up from (2,0) and touches the disk at (0,2) exactly when it reaches full size.
The new contact closes a four-cycle; one edge of that cycle has to let go.
"""

import math

import numpy as np

from branchpoly.geometry import WeightedGraph
from branchpoly.sampler2d import GrowthState, add_vertex, begin_vertex, break_cycle, candidate_rates, detect_next_event

rng = np.random.default_rng(0)
state = GrowthState(WeightedGraph.disks([1, 1, 1, 1]), [1, 2, 3, 4], radii=[1, 1, 1, 1])
add_vertex(state, rng, neighbor=1, angle=0.0)
add_vertex(state, rng, neighbor=1, angle=math.pi / 2)
begin_vertex(state, rng, neighbor=2, angle=math.pi / 2)

t, pair = detect_next_event(state)
print(f"first contact at t={t:.6f} between disks {pair}")
state.t = t
state.update_kinematics()

# Each cycle edge gets a rate: how fast its gap would open if it were the one
# released while growth continues.  Closing edges (negative rate) are never
# chosen; the others are picked with probability proportional to rate * length.
event = candidate_rates(state, pair)
for c in event.candidates:
    print(f"  edge {c.edge}: rate {c.rate:+.3f}, length {c.length:.1f}, weight {c.weight:.3f}")
print("sum of rate*length over the cycle:", sum(c.rate * c.length for c in event.candidates))

# by symmetry the two far edges are equally likely
picks = []
for seed in range(2000):
    s = GrowthState(WeightedGraph.disks([1] * 4), [1, 2, 3, 4], radii=[1] * 4)
    add_vertex(s, rng, neighbor=1, angle=0.0)
    add_vertex(s, rng, neighbor=1, angle=math.pi / 2)
    begin_vertex(s, rng, neighbor=2, angle=math.pi / 2)
    s.t = 1.0
    s.update_kinematics()
    picks.append(break_cycle(s, candidate_rates(s, (3, 4)), np.random.default_rng(seed)))
print("released (1,2):", picks.count((1, 2)), " released (1,3):", picks.count((1, 3)))
