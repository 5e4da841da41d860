"""Colouring with forbidden differences.

An (A, f)-colouring must satisfy c(tail) - c(head) != f(edge) on every
oriented edge.  With f = 0 this is ordinary colouring, but other choices
of f can make an even cycle behave like an odd one.
"""
import random

from groupedge.abelian import Group
from groupedge.catalog import cycle_graph, random_two_degenerate
from groupedge.choosability import is_A_colorable
from groupedge.graphcore import Orientation, line_graph
from groupedge.groupcolor import (
    ForbiddenAssignment,
    ListAssignment,
    peel_and_color,
    solve_exact,
    verify_coloring,
)

c4 = cycle_graph(4)
z2 = Group((2,))
print("C4 with f = 0 over Z2:", solve_exact(c4, ForbiddenAssignment.zero(c4, z2)))

verdict = is_A_colorable(c4, z2, certify=False)
print("C4 is Z2-colourable for every f:", verdict.holds)
print("  a bad f:", verdict.witness.fa.values)
print("C4 over Z3:", is_A_colorable(c4, Group((3,)), certify=False).holds)

# Edge lists of size Delta + 1 on a 2-degenerate graph: peel low degree-sum
# edges, then colour them back greedily in reverse order.
rng = random.Random(1)
g = random_two_degenerate(9, rng, max_degree=4)
lg = line_graph(g).line_graph
grp = Group((g.max_degree + 1,))
fa = ForbiddenAssignment(
    grp, Orientation.default(lg), {e: rng.choice(grp.elements) for e in lg.edges}
)
la = ListAssignment.from_lists(grp, [rng.sample(grp.elements, g.max_degree + 1) for _ in range(lg.n)])
c = peel_and_color(g, 1, fa, la)
print(f"\n{g.m} edges, Delta = {g.max_degree}, group {grp}")
for j, e in enumerate(g.edges):
    print(f"  edge {e}: colour {c[j]} from list {la.lists[j]}")
print("valid:", verify_coloring(lg, fa, la, c)[0])
