"""Plane graphs given as rotation systems, and their faces."""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .graphcore import Graph, GraphParseError, graph_from_json

__all__ = [
    "PlaneGraph",
    "Face",
    "InvalidRotationError",
    "NonSphericalEmbeddingError",
    "build_plane_graph",
    "plane_graph_from_neighbor_orders",
    "face_profile",
    "face_adjacencies",
    "embedding_to_json",
    "embedding_from_json",
    "random_plane_graph",
]


class InvalidRotationError(ValueError):
    pass


class NonSphericalEmbeddingError(ValueError):
    pass


@dataclass(frozen=True)
class Face:
    id: int
    walk: tuple  # directed edges (u, v) in traversal order

    @property
    def degree(self):
        return len(self.walk)

    @cached_property
    def multiplicity(self):
        counts = {}
        for u, _ in self.walk:
            counts[u] = counts.get(u, 0) + 1
        return counts

    @property
    def vertices(self):
        return tuple(u for u, _ in self.walk)

    @property
    def is_simple(self):
        return all(c == 1 for c in self.multiplicity.values()) and len(self.multiplicity) == self.degree


def _canonical_walk(walk):
    i = min(range(len(walk)), key=lambda k: walk[k])
    return walk[i:] + walk[:i]


class PlaneGraph:
    """A connected graph with a rotation system of spherical genus.

    ``rotation[v]`` lists the neighbours of ``v`` in cyclic order.  Faces
    are traced by the rule: after arriving at ``v`` from ``u``, leave
    towards the successor of ``u`` in the rotation at ``v``.
    """

    def __init__(self, graph, rotation):
        self.graph = graph
        self.rotation = tuple(tuple(r) for r in rotation)
        if len(self.rotation) != graph.n:
            raise InvalidRotationError(f"rotation has {len(self.rotation)} entries, graph has {graph.n} vertices")
        for v in range(graph.n):
            if sorted(self.rotation[v]) != list(graph.adj[v]):
                raise InvalidRotationError(
                    f"rotation at vertex {v} is {list(self.rotation[v])}, incident neighbours are {list(graph.adj[v])}"
                )
        if not graph.is_connected():
            raise NonSphericalEmbeddingError("graph is disconnected; only connected embeddings are accepted")
        self._succ = []
        for v in range(graph.n):
            r = self.rotation[v]
            self._succ.append({r[i]: r[(i + 1) % len(r)] for i in range(len(r))})
        self.faces = self._trace()
        euler = graph.n - graph.m + len(self.faces)
        if euler != 2:
            raise NonSphericalEmbeddingError(
                f"V - E + F = {graph.n} - {graph.m} + {len(self.faces)} = {euler} != 2"
            )
        self.dart_face = {d: f.id for f in self.faces for d in f.walk}

    def _trace(self):
        g = self.graph
        if g.m == 0:
            # a lone vertex (or the null graph) bounds a single empty face
            return (Face(0, ()),) if g.n else ()
        seen = set()
        walks = []
        for u, v in g.edges:
            for dart in ((u, v), (v, u)):
                if dart in seen:
                    continue
                walk = []
                d = dart
                while d not in seen:
                    seen.add(d)
                    walk.append(d)
                    a, b = d
                    d = (b, self._succ[b][a])
                walks.append(_canonical_walk(tuple(walk)))
        walks.sort()
        return tuple(Face(i, w) for i, w in enumerate(walks))

    def multiplicity(self, v, face):
        return self.faces[face].multiplicity.get(v, 0)

    def mirror(self):
        return PlaneGraph(self.graph, [tuple(reversed(r)) for r in self.rotation])

    def face_degrees(self):
        return [f.degree for f in self.faces]


def build_plane_graph(g, rotation_edges):
    """Build from per-vertex cyclic lists of edge indices into ``g.edges``."""
    rotation = []
    for v in range(g.n):
        order = rotation_edges.get(v, rotation_edges.get(str(v), [])) if isinstance(rotation_edges, dict) else rotation_edges[v]
        nbrs = []
        for idx in order:
            try:
                a, b = g.edges[idx]
            except (IndexError, TypeError):
                raise InvalidRotationError(f"vertex {v}: edge index {idx!r} out of range") from None
            if v not in (a, b):
                raise InvalidRotationError(f"vertex {v}: edge {idx} = {(a, b)} is not incident")
            nbrs.append(b if a == v else a)
        rotation.append(nbrs)
    return PlaneGraph(g, rotation)


def plane_graph_from_neighbor_orders(n, orders):
    """Build from per-vertex cyclic neighbour lists; edges are implied."""
    edges = {tuple(sorted((v, w))) for v in range(n) for w in orders[v]}
    return PlaneGraph(Graph(n, edges), orders)


def face_profile(pg):
    """``(face id, degree, {vertex: m_v(f)}, simple)`` for every face."""
    return [(f.id, f.degree, dict(f.multiplicity), f.is_simple) for f in pg.faces]


def face_adjacencies(pg):
    """One ``(face, face)`` pair per edge, sorted; bridges give a self pair."""
    pairs = []
    for u, v in pg.graph.edges:
        a, b = pg.dart_face[(u, v)], pg.dart_face[(v, u)]
        pairs.append((min(a, b), max(a, b)))
    pairs.sort()
    return pairs


def embedding_to_json(pg):
    g = pg.graph
    idx = g.edge_index
    rotation = {
        str(v): [idx[tuple(sorted((v, w)))] for w in pg.rotation[v]] for v in range(g.n)
    }
    return {"n": g.n, "edges": [list(e) for e in g.edges], "rotation": rotation}


def embedding_from_json(obj):
    """Parse the embedding JSON form; edge indices refer to the given edge list order."""
    g_in = graph_from_json(obj)
    try:
        raw_edges = [tuple(e) for e in obj["edges"]]
        rot = obj["rotation"]
    except (KeyError, TypeError) as exc:
        raise GraphParseError(f"malformed embedding JSON: {exc}") from exc
    orders = []
    for v in range(g_in.n):
        entry = rot.get(str(v), rot.get(v, [])) if isinstance(rot, dict) else rot[v]
        nbrs = []
        for idx in entry:
            if not isinstance(idx, int) or not 0 <= idx < len(raw_edges):
                raise InvalidRotationError(f"vertex {v}: edge index {idx!r} out of range")
            a, b = raw_edges[idx]
            if v not in (a, b):
                raise InvalidRotationError(f"vertex {v}: edge {idx} = {(a, b)} is not incident")
            nbrs.append(b if a == v else a)
        orders.append(nbrs)
    return PlaneGraph(g_in, orders)


def random_plane_graph(n, rng=None, extra_edges=None):
    """Random connected plane graph: a random tree plus face-splitting chords.

    Each chord joins two corners of one face, so the rotation stays
    spherical by construction.
    """
    rng = rng if rng is not None else random.Random()
    if n <= 1:
        return PlaneGraph(Graph(n), [[] for _ in range(n)])
    orders = [[] for _ in range(n)]
    for v in range(1, n):
        p = rng.randrange(v)
        orders[v].insert(rng.randrange(len(orders[v]) + 1), p)
        orders[p].insert(rng.randrange(len(orders[p]) + 1), v)
    pg = plane_graph_from_neighbor_orders(n, orders)
    if extra_edges is None:
        extra_edges = rng.randrange(0, 2 * n - 3)
    for _ in range(extra_edges):
        candidates = []
        for f in pg.faces:
            w = f.walk
            for i in range(len(w)):
                for j in range(i + 1, len(w)):
                    u, v = w[i][0], w[j][0]
                    if u != v and not pg.graph.has_edge(u, v):
                        candidates.append((w, i, j))
        if not candidates:
            break
        w, i, j = rng.choice(candidates)
        u, v = w[i][0], w[j][0]
        orders = [list(r) for r in pg.rotation]
        # corner at u sits between the arriving dart w[i-1] and leaving dart w[i]
        for x, corner in ((u, i), (v, j)):
            prev = w[corner - 1][0]
            other = v if x == u else u
            r = orders[x]
            r.insert(r.index(prev) + 1, other)
        pg = plane_graph_from_neighbor_orders(n, orders)
    return pg
