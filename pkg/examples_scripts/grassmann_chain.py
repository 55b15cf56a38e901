"""The Grassmann graph J_q(n,k): adjacency means meeting in k-1 dims.

The spreading argument runs through a chain of named vertex sets; each
stage is checked on the actual graph.

    python examples_scripts/grassmann_chain.py
"""

from p3hull import build_graph, grassmann_pair, hull, verify_grassmann_chain

g = build_graph("grassmann", 2, 6, 3)
gp = grassmann_pair(2, 6, 3)
print(g.name, g.num_vertices, "vertices, degree", int(g.degrees()[0]))
print("v1 =", gp.v1.pretty(), " v2 =", gp.v2.pretty())
print("the u's:", ", ".join(u.pretty() for u in gp.u))

H, trace = hull(g, [g.id_of(gp.v1), g.id_of(gp.v2)])
print(f"hull {len(H)}/{g.num_vertices} in {trace.converged_at} rounds")

report = verify_grassmann_chain(g)
for stage in report.stages:
    print(f"  [{'ok' if stage.passed else 'FAIL'}] {stage.name}: {stage.detail}")
