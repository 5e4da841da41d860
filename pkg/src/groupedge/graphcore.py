"""Simple graphs, line graphs, and the structural metrics used by the bounds.

Vertices are dense integers ``0..n-1``; an edge is stored as a sorted pair.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

__all__ = [
    "Graph",
    "Orientation",
    "LineGraphMap",
    "GraphParseError",
    "INFINITY",
    "line_graph",
    "girth",
    "degeneracy",
    "simple_cycles",
    "has_adjacent_short_cycles",
    "alternating_cycles",
    "triangle_edges",
    "encode_graph6",
    "decode_graph6",
    "graph_to_json",
    "graph_from_json",
]

INFINITY = math.inf


class GraphParseError(ValueError):
    def __init__(self, message, offset=None):
        if offset is not None:
            message = f"{message} (at byte {offset})"
        super().__init__(message)
        self.offset = offset


def _norm_edge(u, v):
    return (u, v) if u < v else (v, u)


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``."""

    def __init__(self, n, edges=()):
        n = int(n)
        if n < 0:
            raise ValueError("vertex count must be non-negative")
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            e = _norm_edge(u, v)
            if e in norm:
                raise ValueError(f"parallel edge {e}")
            norm.add(e)
        self._n = n
        self._edges = tuple(sorted(norm))
        self._edge_set = frozenset(norm)

    @property
    def n(self):
        return self._n

    @property
    def edges(self):
        """Edges as sorted pairs, in lexicographic order."""
        return self._edges

    @property
    def m(self):
        return len(self._edges)

    def __eq__(self, other):
        return isinstance(other, Graph) and (self._n, self._edges) == (other._n, other._edges)

    def __hash__(self):
        return hash((self._n, self._edges))

    def __repr__(self):
        return f"Graph({self._n}, {list(self._edges)})"

    def has_edge(self, u, v):
        return _norm_edge(u, v) in self._edge_set

    @cached_property
    def adj(self):
        nbrs = [[] for _ in range(self._n)]
        for u, v in self._edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        return tuple(tuple(sorted(x)) for x in nbrs)

    def degree(self, v):
        return len(self.adj[v])

    @cached_property
    def degrees(self):
        return tuple(len(a) for a in self.adj)

    @property
    def max_degree(self):
        return max(self.degrees, default=0)

    @property
    def min_degree(self):
        return min(self.degrees, default=0)

    @cached_property
    def edge_index(self):
        return {e: i for i, e in enumerate(self._edges)}

    def components(self):
        seen = [False] * self._n
        comps = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            comp, queue = [s], deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        queue.append(w)
            comps.append(sorted(comp))
        return comps

    def is_connected(self):
        return len(self.components()) <= 1

    def is_forest(self):
        return self.m == self._n - len(self.components())

    def spanning_forest(self):
        """Edges of a BFS spanning forest (roots at the smallest vertex)."""
        seen = [False] * self._n
        tree = []
        for s in range(self._n):
            if seen[s]:
                continue
            seen[s] = True
            queue = deque([s])
            while queue:
                u = queue.popleft()
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        tree.append(_norm_edge(u, w))
                        queue.append(w)
        return sorted(tree)

    def edge_subgraph(self, edges):
        """Spanning subgraph keeping only ``edges`` (vertex set unchanged)."""
        return Graph(self._n, edges)

    def induced(self, vertices):
        """Induced subgraph relabelled to ``0..len(vertices)-1``."""
        vertices = sorted(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        return Graph(
            len(vertices),
            [(pos[u], pos[v]) for u, v in self._edges if u in pos and v in pos],
        )

    def relabel(self, perm):
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        return Graph(self._n, [(perm[u], perm[v]) for u, v in self._edges])


@dataclass(frozen=True)
class Orientation:
    """A direction ``(tail, head)`` for every edge of a graph."""

    direction: dict

    @classmethod
    def default(cls, g):
        return cls({e: e for e in g.edges})

    def __post_init__(self):
        for e, (t, h) in self.direction.items():
            if _norm_edge(t, h) != e:
                raise ValueError(f"direction {(t, h)} does not match edge {e}")

    def __getitem__(self, edge):
        return self.direction[_norm_edge(*edge)]

    def covers(self, g):
        return set(self.direction) == set(g.edges)

    def reversed(self, edge):
        e = _norm_edge(*edge)
        t, h = self.direction[e]
        d = dict(self.direction)
        d[e] = (h, t)
        return Orientation(d)


@dataclass(frozen=True)
class LineGraphMap:
    source: Graph
    line_graph: Graph
    edge_to_vertex: dict = field(repr=False)

    @property
    def vertex_to_edge(self):
        return self.source.edges


def line_graph(g):
    """Line graph of ``g``; vertex ``i`` stands for ``g.edges[i]``."""
    edges = g.edges
    at_vertex = [[] for _ in range(g.n)]
    for i, (u, v) in enumerate(edges):
        at_vertex[u].append(i)
        at_vertex[v].append(i)
    lg_edges = set()
    for incident in at_vertex:
        for a in range(len(incident)):
            for b in range(a + 1, len(incident)):
                lg_edges.add((incident[a], incident[b]))
    lg = Graph(len(edges), lg_edges)
    return LineGraphMap(g, lg, {e: i for i, e in enumerate(edges)})


def girth(g):
    """Length of a shortest cycle, or ``INFINITY`` for a forest."""
    best = INFINITY
    for s in range(g.n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for w in g.adj[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def degeneracy(g):
    """Return ``(k, order)`` from smallest-degree-first peeling.

    Ties are broken by the smallest vertex id.  Every vertex has at most
    ``k`` neighbours appearing later in ``order``.
    """
    deg = list(g.degrees)
    alive = [True] * g.n
    order = []
    k = 0
    for _ in range(g.n):
        v = min((u for u in range(g.n) if alive[u]), key=lambda u: (deg[u], u))
        k = max(k, deg[v])
        alive[v] = False
        order.append(v)
        for w in g.adj[v]:
            if alive[w]:
                deg[w] -= 1
    return k, order


def simple_cycles(g, max_length=None):
    """All cycles as vertex tuples, each listed once.

    A cycle starts at its smallest vertex and its second vertex is smaller
    than its last, which fixes one representative per rotation/reflection.
    """
    limit = g.n if max_length is None else min(max_length, g.n)
    out = []
    adj = g.adj
    for s in range(g.n):
        path = [s]
        on_path = {s}

        def extend(u):
            for w in adj[u]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    out.append(tuple(path))
                elif w > s and w not in on_path and len(path) < limit:
                    path.append(w)
                    on_path.add(w)
                    extend(w)
                    path.pop()
                    on_path.discard(w)

        extend(s)
    out.sort(key=lambda c: (len(c), c))
    return out


def _cycle_edges(cycle):
    return frozenset(_norm_edge(cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle)))


def has_adjacent_short_cycles(g, s, t):
    """Look for two distinct cycles of lengths ``i <= s`` and ``j <= t`` sharing an edge.

    Returns ``(True, (cycle_i, cycle_j))`` or ``(False, None)``.
    """
    if s > t:
        s, t = t, s
    cycles = simple_cycles(g, max_length=t)
    by_edge = {}
    for idx, c in enumerate(cycles):
        for e in _cycle_edges(c):
            by_edge.setdefault(e, []).append(idx)
    for idx, c in enumerate(cycles):
        if len(c) > s:
            continue
        for e in sorted(_cycle_edges(c)):
            for other in by_edge[e]:
                if other != idx:
                    return True, (c, cycles[other])
    return False, None


def alternating_cycles(g, i):
    """Even cycles in which every other vertex has degree exactly ``i``."""
    if i < 1:
        raise ValueError("i must be >= 1")
    deg = g.degrees
    found = []
    for c in simple_cycles(g):
        if len(c) % 2:
            continue
        if all(deg[v] == i for v in c[0::2]) or all(deg[v] == i for v in c[1::2]):
            found.append(c)
    return found


def triangle_edges(g):
    """Set of edges lying on at least one triangle."""
    out = set()
    adj = [set(a) for a in g.adj]
    for u, v in g.edges:
        if adj[u] & adj[v]:
            out.add((u, v))
    return out


# ---- graph6 ------------------------------------------------------------------


def _encode_n(n):
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise ValueError("graph6 supports at most 258047 vertices here")


def encode_graph6(g):
    bits = []
    for j in range(1, g.n):
        for i in range(j):
            bits.append(1 if g.has_edge(i, j) else 0)
    bits.extend([0] * (-len(bits) % 6))
    body = "".join(
        chr(63 + int("".join(map(str, bits[k:k + 6])), 2)) for k in range(0, len(bits), 6)
    )
    return _encode_n(g.n) + body


def decode_graph6(text):
    raw = text.strip()
    base = 0
    if raw.startswith(">>graph6<<"):
        raw = raw[10:]
        base = 10
    data = raw.encode("ascii", errors="replace")
    if not data:
        raise GraphParseError("empty graph6 string", base)
    for pos, byte in enumerate(data):
        if not 63 <= byte <= 126:
            raise GraphParseError(f"invalid graph6 byte {byte!r}", base + pos)
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise GraphParseError("8-byte graph6 size form not supported", base + 1)
        if len(data) < 4:
            raise GraphParseError("truncated size field", base + len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        start = 4
    else:
        n = data[0] - 63
        start = 1
    need = (n * (n - 1) // 2 + 5) // 6
    body = data[start:]
    if len(body) != need:
        raise GraphParseError(
            f"expected {need} data bytes for n={n}, got {len(body)}",
            base + start + min(len(body), need),
        )
    bits = []
    for byte in body:
        v = byte - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[k:]):
        raise GraphParseError("non-zero padding bits", base + len(data) - 1)
    return Graph(n, edges)


def graph_to_json(g):
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


def graph_from_json(obj):
    try:
        return Graph(obj["n"], [tuple(e) for e in obj["edges"]])
    except (KeyError, TypeError) as exc:
        raise GraphParseError(f"malformed graph JSON: {exc}") from exc
