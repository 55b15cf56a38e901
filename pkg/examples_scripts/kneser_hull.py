"""Two vertices infect the whole q-Kneser graph.

Threshold-2 bootstrap percolation: a vertex becomes infected once two of
its neighbours are.  We seed two subspaces and watch the rounds.

    python examples_scripts/kneser_hull.py
"""

from p3hull import build_graph, find_hull_pair, hull, kneser_case1_pair

g = build_graph("qkneser", 2, 5, 2)
w1, w2, u = kneser_case1_pair(2, 5, 2)
print(g.name, "with", g.num_vertices, "vertices")
print("seed:", w1.pretty(), "and", w2.pretty(), "inside", u.pretty())

H, trace = hull(g, [g.id_of(w1), g.id_of(w2)])
for r, new in enumerate(trace.rounds, 1):
    print(f"round {r}: +{len(new)}")
print(f"hull covers {len(H)}/{g.num_vertices}")

# n = 2k: the pair has to intersect; any non-adjacent pair works.
g = build_graph("qkneser", 3, 4, 2)
res = find_hull_pair(g, "full")
a, b = res.pair
print(f"{g.name}: first working pair {g.vertex(a).pretty()} / {g.vertex(b).pretty()}"
      f" after {res.pairs_checked} tries, {res.trace.converged_at} rounds")

# A single vertex never spreads.
H, _ = hull(g, [0])
print("hull of one vertex has size", len(H))
