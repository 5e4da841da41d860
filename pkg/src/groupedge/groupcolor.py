"""(A, L, f)-coloring instances: verification, greedy extension, exact search
and the degree-sum peeling algorithm for line graphs.

A coloring ``c`` of an oriented graph satisfies the instance when
``c(tail) - c(head) != f(tail -> head)`` on every edge and ``c(v)`` lies in
``L(v)`` for every vertex.
"""
from __future__ import annotations

from dataclasses import dataclass

from .abelian import Group, make_group
from .graphcore import Graph, Orientation, line_graph

__all__ = [
    "ForbiddenAssignment",
    "ListAssignment",
    "Violation",
    "IncompleteColoringError",
    "InvalidInstanceError",
    "PeelingStuck",
    "verify_coloring",
    "forbidden_values",
    "greedy_extend",
    "solve_exact",
    "peel_order",
    "peel_and_color",
    "reverse_edge",
    "gauge_transform",
    "instance_to_json",
    "instance_from_json",
    "coloring_to_json",
]


class IncompleteColoringError(ValueError):
    pass


class InvalidInstanceError(ValueError):
    pass


class PeelingStuck(Exception):
    """Raised when no edge meets the degree-sum threshold.

    ``core`` is the remaining subgraph (same vertex set), in which every
    edge ``uv`` has ``d(u) + d(v)`` above the threshold.
    """

    def __init__(self, core, removed, threshold):
        super().__init__(f"no edge with degree sum <= {threshold}; {core.m} edges remain")
        self.core = core
        self.removed = removed
        self.threshold = threshold


@dataclass(frozen=True)
class ForbiddenAssignment:
    group: Group
    orientation: Orientation
    values: dict  # edge (sorted pair) -> element, read along orientation[edge]

    @classmethod
    def zero(cls, g, group, orientation=None):
        orientation = orientation or Orientation.default(g)
        return cls(group, orientation, {e: group.zero for e in g.edges})

    @classmethod
    def from_values(cls, g, group, values, orientation=None):
        """``values`` maps edges (or a sequence aligned with ``g.edges``) to elements."""
        orientation = orientation or Orientation.default(g)
        if not isinstance(values, dict):
            values = dict(zip(g.edges, values))
        return cls(group, orientation, {tuple(sorted(e)): group.check(x) for e, x in values.items()})

    def validate(self, g):
        if not self.orientation.covers(g) or set(self.values) != set(g.edges):
            raise InvalidInstanceError("forbidden assignment must cover exactly the graph's edges")


@dataclass(frozen=True)
class ListAssignment:
    group: Group
    k: int
    lists: tuple  # lists[v] is a tuple of distinct elements

    @classmethod
    def from_lists(cls, group, lists):
        lists = tuple(tuple(group.check(x) for x in lst) for lst in lists)
        sizes = {len(lst) for lst in lists}
        if len(sizes) > 1:
            raise InvalidInstanceError(f"list assignment is not uniform: sizes {sorted(sizes)}")
        for v, lst in enumerate(lists):
            if len(set(lst)) != len(lst):
                raise InvalidInstanceError(f"list at vertex {v} has repeated entries")
        k = sizes.pop() if sizes else 0
        if k > group.order:
            raise InvalidInstanceError(f"list size {k} exceeds group order {group.order}")
        return cls(group, k, lists)

    @classmethod
    def full(cls, group, n):
        return cls(group, group.order, (tuple(group.elements),) * n)


@dataclass(frozen=True)
class Violation:
    kind: str  # "edge" or "list"
    where: tuple
    detail: str


def _lists_for(g, fa, la):
    if la is None:
        return [tuple(fa.group.elements)] * g.n
    if len(la.lists) != g.n:
        raise InvalidInstanceError(f"list assignment has {len(la.lists)} lists, graph has {g.n} vertices")
    return la.lists


def verify_coloring(g, fa, la, c):
    """Check a total coloring; returns ``(ok, first_violation_or_None)``.

    ``la=None`` means every vertex may use the whole group.
    """
    missing = [v for v in range(g.n) if v not in c]
    if missing:
        raise IncompleteColoringError(f"vertices {missing} are uncolored")
    grp = fa.group
    for v, lst in enumerate(_lists_for(g, fa, la)):
        if c[v] not in lst:
            return False, Violation("list", (v,), f"c({v})={c[v]} not in L({v})={list(lst)}")
    for e in g.edges:
        t, h = fa.orientation[e]
        diff = grp.sub(c[t], c[h])
        if diff == fa.values[e]:
            return False, Violation("edge", (t, h), f"c({t})-c({h})={diff} equals f({t}->{h})")
    return True, None


def forbidden_values(g, fa, c, v):
    """Colours ruled out at ``v`` by its already-coloured neighbours."""
    grp = fa.group
    out = set()
    for w in g.adj[v]:
        if w in c:
            t, _ = fa.orientation[(v, w)]
            x = fa.values[tuple(sorted((v, w)))]
            # w -> v forbids c(w) - f; v -> w forbids c(w) + f
            out.add(grp.sub(c[w], x) if t == w else grp.add(c[w], x))
    return out


def greedy_extend(g, fa, la, c, v):
    """First colour of ``L(v)`` not forbidden by coloured neighbours, or ``None``."""
    if v in c:
        raise ValueError(f"vertex {v} is already coloured")
    bad = forbidden_values(g, fa, c, v)
    lst = _lists_for(g, fa, la)[v]
    for x in lst:
        if x not in bad:
            return x
    return None


class _CompiledInstance:
    """Index-level tables for backtracking over one (g, f, L) instance."""

    def __init__(self, g, fa, list_masks):
        grp = fa.group
        add, sub = grp.add_table, grp.sub_table
        self.n = g.n
        self.masks = list_masks
        self.arcs = [[] for _ in range(g.n)]
        for e in g.edges:
            t, h = fa.orientation[e]
            fi = grp.index(fa.values[e])
            # c(t) - c(h) != f  <=>  c(h) != c(t) - f  <=>  c(t) != c(h) + f
            self.arcs[t].append((h, tuple(sub[x][fi] for x in range(grp.order))))
            self.arcs[h].append((t, tuple(add[x][fi] for x in range(grp.order))))

    def solve(self):
        n = self.n
        colour = [-1] * n
        domains = list(self.masks)
        if any(d == 0 for d in domains):
            return None
        arcs = self.arcs

        def search(domains, left):
            if not left:
                return True
            v = min(left, key=lambda u: (domains[u].bit_count(), u))
            rest = left - {v}
            mask = domains[v]
            while mask:
                low = mask & -mask
                x = low.bit_length() - 1
                mask ^= low
                new = domains[:]
                ok = True
                for w, tab in arcs[v]:
                    if colour[w] < 0:
                        nm = new[w] & ~(1 << tab[x])
                        if not nm:
                            ok = False
                            break
                        new[w] = nm
                if ok:
                    colour[v] = x
                    if search(new, rest):
                        return True
                    colour[v] = -1
            return False

        if search(domains, frozenset(range(n))):
            return colour
        return None


def _list_masks(grp, lists):
    return [sum(1 << grp.index(x) for x in lst) for lst in lists]


def solve_exact(g, fa, la=None):
    """Exhaustive backtracking; a satisfying coloring dict, or ``None`` if UNSAT.

    Vertices are chosen smallest-domain-first (ties to the smaller id) and
    colours in element order, so results are deterministic.
    """
    fa.validate(g)
    grp = fa.group
    inst = _CompiledInstance(g, fa, _list_masks(grp, _lists_for(g, fa, la)))
    colour = inst.solve()
    if colour is None:
        return None
    els = grp.elements
    return {v: els[colour[v]] for v in range(g.n)}


def peel_order(g, i):
    """Remove edges with ``d(u) + d(v) <= Delta(g) + i + 1`` one at a time.

    Returns the removal order of edges.  Raises :class:`PeelingStuck` when
    an edge remains but none qualifies.  ``Delta`` is fixed from ``g``.
    """
    threshold = g.max_degree + i + 1
    deg = list(g.degrees)
    remaining = set(g.edges)
    removed = []
    while remaining:
        pick = None
        for e in sorted(remaining):
            if deg[e[0]] + deg[e[1]] <= threshold:
                pick = e
                break
        if pick is None:
            raise PeelingStuck(g.edge_subgraph(remaining), removed, threshold)
        remaining.discard(pick)
        removed.append(pick)
        deg[pick[0]] -= 1
        deg[pick[1]] -= 1
    return removed


def peel_and_color(g, i, fa, la):
    """Colour the line graph of ``g`` by degree-sum peeling and greedy re-insertion.

    ``fa`` and ``la`` live on ``line_graph(g)`` (vertex ``j`` is ``g.edges[j]``)
    and every list must have size ``Delta(g) + i``.  Edges are coloured in
    reverse removal order; each then sees at most ``Delta(g) + i - 1``
    coloured neighbours, so a free colour always exists.
    """
    lmap = line_graph(g)
    lg = lmap.line_graph
    size = g.max_degree + i
    if la.k != size or len(la.lists) != lg.n:
        raise InvalidInstanceError(f"lists must have size Delta+i = {size} on all {lg.n} line-graph vertices")
    fa.validate(lg)
    order = peel_order(g, i)
    c = {}
    for e in reversed(order):
        v = lmap.edge_to_vertex[e]
        x = greedy_extend(lg, fa, la, c, v)
        if x is None:
            raise RuntimeError(f"greedy extension exhausted at edge {e}")
        c[v] = x
    return c


def reverse_edge(fa, edge):
    """Flip one edge's direction and negate its value; the instance is unchanged."""
    e = tuple(sorted(edge))
    values = dict(fa.values)
    values[e] = fa.group.neg(values[e])
    return ForbiddenAssignment(fa.group, fa.orientation.reversed(e), values)


def gauge_transform(g, fa, la, potential):
    """Shift by a vertex potential ``p``: f' = f - p(tail) + p(head), L' = L - p.

    Solutions correspond through ``c'(v) = c(v) - p(v)``.
    """
    grp = fa.group
    values = {}
    for e in g.edges:
        t, h = fa.orientation[e]
        values[e] = grp.add(grp.sub(fa.values[e], potential[t]), potential[h])
    lists = _lists_for(g, fa, la)
    new_lists = tuple(tuple(grp.sub(x, potential[v]) for x in lst) for v, lst in enumerate(lists))
    new_la = ListAssignment(grp, len(new_lists[0]) if new_lists else 0, new_lists) if la is not None else None
    return ForbiddenAssignment(grp, fa.orientation, values), new_la


# ---- JSON --------------------------------------------------------------------


def instance_to_json(g, fa, la=None, source=None):
    out = {
        "graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
        "group": fa.group.to_json(),
        "orientation": [list(fa.orientation[e]) for e in g.edges],
        "f": [list(fa.values[e]) for e in g.edges],
        "lists": None if la is None else [[list(x) for x in lst] for lst in la.lists],
    }
    if source is not None:
        out["source_graph"] = {"n": source.n, "edges": [list(e) for e in source.edges]}
    return out


def instance_from_json(obj):
    """Parse an instance; returns ``(graph, fa, la_or_None, source_or_None)``.

    ``orientation`` and ``f`` are aligned with ``graph.edges`` as given.
    When ``source_graph`` is present, ``graph`` must be its line graph.
    """
    try:
        gj = obj["graph"]
        raw_edges = [tuple(e) for e in gj["edges"]]
        g = Graph(gj["n"], raw_edges)
        grp = make_group(obj.get("group", []))
        orient_raw = obj.get("orientation")
        f_raw = obj["f"]
        lists_raw = obj.get("lists")
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInstanceError(f"malformed instance: {exc}") from exc
    if len(f_raw) != len(raw_edges):
        raise InvalidInstanceError("'f' must have one entry per edge")
    direction = {}
    values = {}
    for idx, e in enumerate(raw_edges):
        key = tuple(sorted(e))
        td = tuple(orient_raw[idx]) if orient_raw is not None else key
        if tuple(sorted(td)) != key:
            raise InvalidInstanceError(f"orientation {td} does not match edge {e}")
        direction[key] = td
        values[key] = grp.check(f_raw[idx])
    fa = ForbiddenAssignment(grp, Orientation(direction), values)
    la = None
    if lists_raw is not None:
        if len(lists_raw) != g.n:
            raise InvalidInstanceError("'lists' must have one entry per vertex")
        la = ListAssignment.from_lists(grp, lists_raw)
    source = None
    if obj.get("source_graph") is not None:
        sj = obj["source_graph"]
        source = Graph(sj["n"], [tuple(e) for e in sj["edges"]])
        if line_graph(source).line_graph != g:
            raise InvalidInstanceError("'graph' is not the line graph of 'source_graph'")
    return g, fa, la, source


def coloring_to_json(c):
    return {str(v): list(c[v]) for v in sorted(c)}
