"""Finite Abelian groups in invariant-factor form.

Every group of order n is a product Z_n1 x ... x Z_nr with n1 | n2 | ... | nr.
Elements are residue tuples; the solvers work on dense index tables.
"""
from groupedge.abelian import abelian_groups_of_order, make_group, parse_group

for n in (4, 8, 12, 16):
    names = ", ".join(str(g) for g in abelian_groups_of_order(n))
    print(f"order {n:2d}: {names}")

# Z2 x Z3 is cyclic; normalisation merges coprime factors
g = make_group([2, 3])
print("\nZ2 x Z3 normalises to", g)

k = parse_group("Z2xZ4")
a, b = (1, 3), (1, 2)
print(f"in {k}: {a} + {b} = {k.add(a, b)}, {a} - {b} = {k.sub(a, b)}, -{a} = {k.neg(a)}")
print("elements:", k.elements)
