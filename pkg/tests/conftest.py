import itertools

import networkx as nx
import pytest

from groupedge.graphcore import Graph
from groupedge.planemb import PlaneGraph


def nx_to_graph(h):
    nodes = sorted(h.nodes())
    pos = {v: i for i, v in enumerate(nodes)}
    return Graph(len(nodes), [(pos[u], pos[v]) for u, v in h.edges()])


def embed(g):
    """Planar embedding of ``g`` computed by networkx (fixture helper only)."""
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges)
    ok, emb = nx.check_planarity(h)
    assert ok, "fixture graph must be planar"
    return PlaneGraph(g, [list(emb.neighbors_cw_order(v)) for v in range(g.n)])


def named_plane_graph(name):
    builders = {
        "cube": nx.hypercube_graph(3),
        "K4": nx.complete_graph(4),
        "dodecahedron": nx.dodecahedral_graph(),
        "icosahedron": nx.icosahedral_graph(),
        "hexprism": nx.circular_ladder_graph(6),
        "triangle": nx.cycle_graph(3),
        "C4": nx.cycle_graph(4),
        "P3": nx.path_graph(3),
    }
    h = nx.convert_node_labels_to_integers(builders[name], ordering="sorted")
    return embed(nx_to_graph(h))


def brute_force_colorings(g, grp, lists=None):
    els = grp.elements
    domains = [els] * g.n if lists is None else lists
    for combo in itertools.product(*domains):
        yield dict(enumerate(combo))


def chromatic_number_oracle(g):
    for q in range(0, g.n + 1):
        for combo in itertools.product(range(q), repeat=g.n):
            if all(combo[u] != combo[v] for u, v in g.edges):
                return q
    return g.n


# ---- acceptance summary ------------------------------------------------------

_ACCEPTANCE = []


@pytest.fixture
def acceptance_report():
    def record(criterion, passed, detail=""):
        line = f"[{'PASS' if passed else 'FAIL'}] criterion {criterion}: {detail}"
        _ACCEPTANCE.append(line)
        print(line)
        return passed

    return record


def pytest_terminal_summary(terminalreporter):
    if _ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for line in _ACCEPTANCE:
            terminalreporter.write_line(line)
