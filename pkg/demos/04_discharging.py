"""Charges and discharging rules on plane embeddings.

Initial charges (n/2 - m) d(v) - n on vertices and m d(f) - n on faces sum
to -2n by Euler's formula; rules only move charge around.  On a graph that
exists, some element must stay negative.
"""
from groupedge.discharging import apply_rules, builtin_ruleset, nonnegativity_report
from groupedge.planemb import plane_graph_from_neighbor_orders

# the cube, each neighbour list in clockwise order
cube = plane_graph_from_neighbor_orders(
    8,
    [[1, 3, 4], [0, 5, 2], [1, 6, 3], [2, 7, 0], [0, 7, 5], [1, 4, 6], [2, 5, 7], [3, 6, 4]],
)
print("face degrees:", cube.face_degrees())

for case in ("T4-1", "T4-2", "T5"):
    delta = 3 if case == "T5" else None
    m, n, rules = builtin_ruleset(case, delta)
    cm = apply_rules(cube, m, n, rules, delta=delta)
    neg = nonnegativity_report(cm)
    print(f"\n{case}: (m, n) = ({m}, {n}), rules {[r.name for r in rules]}")
    print(f"  total {cm.total_before()} -> {cm.total_after()}, conserved {cm.conserved()}")
    print(f"  {len(neg)} negative elements, e.g. {neg[:2]}")
