"""
The invariant mu(G)
===================

Three independent ways to count the same thing: safe spanning trees,
a signed sum over spanning subgraphs, and the Tutte polynomial at (1, 0).
For interval graphs of 3D projections there is also a product formula.
"""

from branchpoly.geometry import WeightedGraph
from branchpoly.invariants import gamma_product, interval_graph, mu_bipartite, mu_safe_trees, mu_subgraph_sum, tutte_mu

for name, g in [("K4", WeightedGraph.complete(4)), ("C6", WeightedGraph.cycle(6)), ("K2,3", WeightedGraph.complete_multipartite([2, 3]))]:
    print(f"{name:5s} safe trees {mu_safe_trees(g).value:3d}  subgraph sum {mu_subgraph_sum(g).value:3d}  tutte {tutte_mu(g).value:3d}")

print("K_{3,4} from the bipartite closed form:", mu_bipartite(3, 4))

# points on a line, joined when at most 1 apart
xs = (0.0, 0.5, 1.2, 1.4)
H = interval_graph(xs)
print("interval graph edges:", H.edges)
print("gamma product:", gamma_product(xs), " safe trees:", mu_safe_trees(H).value)
