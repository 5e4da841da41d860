"""Bounded sweeps for group edge choice numbers.

The sweep runs over every group of order up to max_order, every f and
every uniform list assignment, so the results hold only inside that range.
"""
import time

from groupedge.catalog import complete_graph, cycle_graph, path_graph, star_graph
from groupedge.choosability import classify_bound, edge_variant

for name, g in [
    ("P5", path_graph(5)),
    ("C5", cycle_graph(5)),
    ("C6", cycle_graph(6)),
    ("K1,3", star_graph(3)),
    ("K4", complete_graph(4)),
]:
    t0 = time.perf_counter()
    num = edge_variant(g, "group_edge_choice", max_order=4)
    predicted = classify_bound(g).predicted_bound
    print(
        f"{name:5s} Delta={g.max_degree}  bounded choice number {num.value}"
        f"  (predicted <= {predicted}, {time.perf_counter() - t0:.2f}s; {num.caveat})"
    )
