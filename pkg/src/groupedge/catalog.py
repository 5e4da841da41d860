"""Small-graph catalogs and random generators for sweeps and tests."""
from __future__ import annotations

import random

import networkx as nx

from .graphcore import Graph, decode_graph6, encode_graph6, GraphParseError

__all__ = [
    "path_graph",
    "cycle_graph",
    "star_graph",
    "complete_graph",
    "complete_bipartite_graph",
    "petersen_graph",
    "cube_graph",
    "all_graphs",
    "connected_graphs",
    "random_tree",
    "random_two_degenerate",
    "random_graph",
    "read_graph6_lines",
    "write_graph6_lines",
]


def path_graph(n):
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves):
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n):
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def complete_bipartite_graph(a, b):
    return Graph(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph():
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def cube_graph():
    return Graph(8, [(u, u ^ (1 << b)) for u in range(8) for b in range(3) if u < u ^ (1 << b)])


def _from_nx(h):
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(pos[u], pos[v]) for u, v in h.edges()])


def all_graphs(max_n, min_n=0):
    """Every graph on ``min_n..max_n`` vertices up to isomorphism (``max_n <= 7``)."""
    if max_n > 7:
        raise ValueError("the bundled atlas stops at 7 vertices")
    return [_from_nx(h) for h in nx.graph_atlas_g() if min_n <= h.number_of_nodes() <= max_n]


def connected_graphs(max_n, min_n=1):
    return [g for g in all_graphs(max_n, min_n) if g.n >= 1 and g.is_connected()]


def random_tree(n, rng=None, max_degree=None):
    """Uniform-attachment random tree, optionally capped in degree."""
    rng = rng or random.Random()
    deg = [0] * n
    edges = []
    for v in range(1, n):
        choices = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        p = rng.choice(choices)
        edges.append((p, v))
        deg[p] += 1
        deg[v] += 1
    return Graph(n, edges)


def random_two_degenerate(n, rng=None, max_degree=None):
    """Add vertices one by one, each joined to at most two earlier vertices."""
    rng = rng or random.Random()
    deg = [0] * n
    edges = []
    for v in range(1, n):
        pool = [u for u in range(v) if max_degree is None or deg[u] < max_degree]
        want = rng.choice((1, 2, 2))
        for u in rng.sample(pool, min(want, len(pool))):
            edges.append((u, v))
            deg[u] += 1
            deg[v] += 1
    return Graph(n, edges)


def random_graph(n, p, rng=None):
    rng = rng or random.Random()
    return Graph(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])


def read_graph6_lines(lines):
    """Yield ``(line_number, graph_or_error)``; malformed lines yield the exception."""
    for lineno, line in enumerate(lines, 1):
        text = line.strip()
        if not text or text.startswith("#"):
            continue
        try:
            yield lineno, decode_graph6(text)
        except GraphParseError as exc:
            yield lineno, exc


def write_graph6_lines(graphs):
    return "".join(encode_graph6(g) + "\n" for g in graphs)
