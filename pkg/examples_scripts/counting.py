"""Gaussian binomials, the intersection classes against a fixed subspace,
and the neighbour counts between classes.

    python examples_scripts/counting.py
"""

from p3hull import build_graph, coordinate_subspace
from p3hull.qcomb import (
    CountParams,
    check_d_i0_bound,
    count_a,
    count_dij,
    gaussian_binomial,
    kneser_degree,
)

q, n, k = 2, 6, 3
print(f"[{n},{k}]_{q} = {gaussian_binomial(n, k, q)} subspaces")
print(f"each is disjoint from {kneser_degree(n, k, q)} others")

# Split the vertices by how much they meet u = <e1, e2, e3>.
m = 3
sizes = [count_a(CountParams(n=n, m=m, k=k, i=i, q=q)) for i in range(k + 1)]
print(f"class sizes against a {m}-space: {sizes} (sum {sum(sizes)})")

g = build_graph("qkneser", q, n, k)
dims = g.intersection_dims(coordinate_subspace(n, range(m), g.field))
print("counted on the graph:        ", [int((dims == i).sum()) for i in range(k + 1)])

# A vertex in class i has exactly d_ij neighbours in class j.
for i in range(k + 1):
    row = [count_dij(CountParams(n=n, m=m, k=k, i=i, j=j, q=q)) if i != j else "-"
           for j in range(k + 1)]
    print(f"  d_{i}j = {row}")

# The bound that drives the spreading argument, far beyond buildable sizes.
rep = check_d_i0_bound(14, 6, 9)
print(f"n=14 k=6 q=9: min d_i0 = {min(rep.values.values())}, ok={rep.ok}")
