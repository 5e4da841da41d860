"""Bounded deciders for group colorability and group choosability.

The quantifier "every Abelian group of order at least m" is replaced by an
explicit list of groups; every verdict records which groups were swept.

Two reductions keep the sweeps small:

* gauge: ``f`` is fixed to zero on a spanning forest and only cotree
  values vary.  This is exact whenever the lists are swept together with
  ``f`` (full lists, or all k-subsets).
* translation: in list sweeps, the list of vertex 0 is required to contain
  the zero element.

A degeneracy certificate short-circuits the sweep when every vertex has
fewer than ``k`` earlier neighbours in some order; greedy colouring along
that order then succeeds for every group, ``f`` and ``L``.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import NamedTuple

from .abelian import abelian_groups_of_order
from .graphcore import (
    INFINITY,
    Orientation,
    degeneracy,
    girth,
    has_adjacent_short_cycles,
    line_graph,
)
from .groupcolor import (
    ForbiddenAssignment,
    ListAssignment,
    PeelingStuck,
    _CompiledInstance,
    instance_to_json,
    peel_order,
)

__all__ = [
    "Verdict",
    "Witness",
    "BoundedNumber",
    "AppliedResult",
    "BoundReport",
    "Obstruction",
    "InvalidQuantifierError",
    "SearchBudgetExceeded",
    "groups_of_orders",
    "is_A_colorable",
    "is_group_k_choosable",
    "group_chromatic_number_bounded",
    "group_choice_number_bounded",
    "edge_variant",
    "criticality_obstructions",
    "classify_bound",
]


class InvalidQuantifierError(ValueError):
    pass


class SearchBudgetExceeded(RuntimeError):
    """The sweep needed more than ``max_instances`` solver calls."""

    def __init__(self, explored):
        super().__init__(f"search budget exhausted after {explored} instances")
        self.explored = explored


@dataclass(frozen=True)
class Witness:
    graph: object
    fa: ForbiddenAssignment
    la: ListAssignment = None  # None: full lists
    source: object = None  # set when graph is the line graph of source

    def to_json(self):
        return instance_to_json(self.graph, self.fa, self.la, source=self.source)


@dataclass
class Verdict:
    holds: bool
    witness: Witness = None
    groups_checked: list = field(default_factory=list)
    counts: dict = field(default_factory=dict)

    @property
    def result(self):
        return "holds" if self.holds else "fails"

    def __bool__(self):
        return self.holds

    def to_json(self):
        return {
            "result": self.result,
            "groups_checked": [g.to_json() for g in self.groups_checked],
            "counts": dict(self.counts),
            "witness": None if self.witness is None else self.witness.to_json(),
        }


class BoundedNumber(NamedTuple):
    """A group chromatic/choice number computed over orders up to ``max_order``.

    ``exceeded`` means no value up to ``max_order`` worked and ``value`` is
    ``max_order + 1``.  Orders above ``max_order`` are never examined.
    """

    value: int
    max_order: int
    exceeded: bool
    witness: Witness = None  # why value - 1 does not work

    @property
    def caveat(self):
        return f"groups of order > {self.max_order} not checked"


def groups_of_orders(lo, hi):
    return [grp for n in range(max(lo, 1), hi + 1) for grp in abelian_groups_of_order(n)]


def _f_space(g, grp, prune):
    """Yield value dicts for f under the default orientation."""
    if prune:
        tree = set(g.spanning_forest())
        free = [e for e in g.edges if e not in tree]
    else:
        tree = set()
        free = list(g.edges)
    fixed = {e: grp.zero for e in tree}
    for combo in itertools.product(grp.elements, repeat=len(free)):
        values = dict(fixed)
        values.update(zip(free, combo))
        yield values


def _certified(g, k):
    return g.n == 0 or degeneracy(g)[0] < k


class _Budget:
    def __init__(self, limit):
        self.limit = limit
        self.used = 0

    def tick(self):
        self.used += 1
        if self.limit is not None and self.used > self.limit:
            raise SearchBudgetExceeded(self.used - 1)


def is_A_colorable(g, a, *, prune=True, certify=True, max_instances=None):
    """Is ``g`` (A, f)-colourable for every ``f``?  Full lists, default orientation."""
    if certify and _certified(g, a.order):
        return Verdict(True, groups_checked=[a], counts={"instances": 0, "certified_by": "degeneracy"})
    budget = _Budget(max_instances)
    full = [(1 << a.order) - 1] * g.n
    orientation = Orientation.default(g)
    f_count = 0
    for values in _f_space(g, a, prune):
        f_count += 1
        budget.tick()
        fa = ForbiddenAssignment(a, orientation, values)
        if _CompiledInstance(g, fa, full).solve() is None:
            return Verdict(
                False,
                Witness(g, fa),
                [a],
                {"instances": budget.used, "f_assignments": f_count, "pruned": prune},
            )
    return Verdict(True, None, [a], {"instances": budget.used, "f_assignments": f_count, "pruned": prune})


def _list_space(grp, k, n, prune):
    combos = list(itertools.combinations(range(grp.order), k))
    masks = [sum(1 << x for x in c) for c in combos]
    if n == 0:
        yield ()
        return
    first = [m for m in masks if m & 1] if prune else masks
    for head in first:
        for tail in itertools.product(masks, repeat=n - 1):
            yield (head,) + tail


def _masks_to_lists(grp, masks):
    els = grp.elements
    return tuple(tuple(els[x] for x in range(grp.order) if m >> x & 1) for m in masks)


def is_group_k_choosable(g, k, groups, *, prune=True, certify=True, max_instances=None):
    """Sweep every listed group, every f, and every k-uniform list assignment."""
    groups = list(groups)
    if k < 1:
        raise InvalidQuantifierError("k must be at least 1")
    small = [grp for grp in groups if grp.order < k]
    if small:
        raise InvalidQuantifierError(f"groups {[str(x) for x in small]} have order below k={k}")
    if certify and _certified(g, k):
        return Verdict(True, groups_checked=groups, counts={"instances": 0, "certified_by": "degeneracy"})
    budget = _Budget(max_instances)
    orientation = Orientation.default(g)
    for grp in groups:
        for values in _f_space(g, grp, prune):
            fa = ForbiddenAssignment(grp, orientation, values)
            for masks in _list_space(grp, k, g.n, prune):
                budget.tick()
                if _CompiledInstance(g, fa, list(masks)).solve() is None:
                    la = ListAssignment(grp, k, _masks_to_lists(grp, masks))
                    return Verdict(False, Witness(g, fa, la), groups, {"instances": budget.used, "pruned": prune})
    return Verdict(True, None, groups, {"instances": budget.used, "pruned": prune})


def group_chromatic_number_bounded(g, max_order, **kw):
    """Smallest m with every group of order in [m, max_order] colourable."""
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    for order in range(max_order, 0, -1):
        for grp in abelian_groups_of_order(order):
            verdict = is_A_colorable(g, grp, **kw)
            if not verdict:
                value = order + 1
                return BoundedNumber(value, max_order, value > max_order, verdict.witness)
    return BoundedNumber(1, max_order, False)


def group_choice_number_bounded(g, max_order, max_k=None, **kw):
    """Smallest k with group k-choosability for every group of order in [k, max_order].

    With ``max_k`` the sweep stops early; ``exceeded`` is then also set
    when no ``k <= max_k`` works.
    """
    if max_order < 2:
        raise ValueError("max_order must be at least 2")
    top = max_order if max_k is None else min(max_k, max_order)
    witness = None
    for k in range(1, top + 1):
        verdict = is_group_k_choosable(g, k, groups_of_orders(k, max_order), **kw)
        if verdict:
            return BoundedNumber(k, max_order, False, witness)
        witness = verdict.witness
    return BoundedNumber(top + 1, max_order, True, witness)


def edge_variant(g, which, **params):
    """Run a vertex decider on ``line_graph(g)``.

    ``which`` is ``"group_edge_chromatic"`` or ``"group_edge_choice"``
    (needs ``max_order``) or ``"k_edge_choosable"`` (needs ``k`` and
    ``groups``).  Witnesses carry ``g`` so edges can be named.
    """
    lg = line_graph(g).line_graph
    if which == "group_edge_chromatic":
        return group_chromatic_number_bounded(lg, **params)
    if which == "group_edge_choice":
        return group_choice_number_bounded(lg, **params)
    if which == "k_edge_choosable":
        params = dict(params)
        verdict = is_group_k_choosable(lg, params.pop("k"), params.pop("groups"), **params)
        if verdict.witness is not None:
            w = verdict.witness
            verdict.witness = Witness(w.graph, w.fa, w.la, source=g)
        return verdict
    raise ValueError(f"unknown edge variant {which!r}")


@dataclass(frozen=True)
class Obstruction:
    kind: str  # "disconnected" | "degree-sum" | "min-degree" | "no-edges"
    where: tuple
    detail: str


def criticality_obstructions(g, i):
    """Reasons ``g`` cannot be group (Delta+i)-edge-critical; empty if none found."""
    out = []
    if g.m == 0:
        out.append(Obstruction("no-edges", (), "a critical graph has at least one edge"))
    if not g.is_connected():
        out.append(Obstruction("disconnected", tuple(len(c) for c in g.components()), "graph is disconnected"))
    delta = g.max_degree
    need = delta + i + 2
    deg = g.degrees
    for u, v in g.edges:
        if deg[u] + deg[v] < need:
            out.append(Obstruction("degree-sum", (u, v), f"d({u})+d({v})={deg[u] + deg[v]} < Delta+i+2={need}"))
    for v in range(g.n):
        if deg[v] < i + 2:
            out.append(Obstruction("min-degree", (v,), f"d({v})={deg[v]} < i+2={i + 2}"))
    return out


# ---- bound classifier --------------------------------------------------------


@dataclass(frozen=True)
class AppliedResult:
    result_id: str
    bound: int
    exact: bool
    hypotheses: dict


@dataclass
class BoundReport:
    applicable_results: list
    predicted_bound: int
    lower_bound: int
    tight: bool

    def to_json(self):
        return {
            "applicable_results": [
                {"id": r.result_id, "bound": r.bound, "exact": r.exact, "hypotheses": r.hypotheses}
                for r in self.applicable_results
            ],
            "predicted_bound": self.predicted_bound,
            "lower_bound": self.lower_bound,
            "tight": self.tight,
        }


# (case id, s, t, minimum Delta)
_ADJACENT_CYCLE_CASES = (("T4-1", 3, 3, 8), ("T4-2", 3, 4, 6), ("T4-3", 4, 5, 5), ("T4-4", 4, 7, 0))


def _json_girth(x):
    return None if x == INFINITY else x


def _classify_component(g, planar_claim):
    delta = g.max_degree
    gi = girth(g)
    out = []
    forest = g.is_forest()
    if forest and delta <= 2:
        out.append(AppliedResult("path", 2 if g.m > 1 else 1, True, {"max_degree": delta}))
    elif delta == 2:
        out.append(AppliedResult("cycle", 3, True, {"max_degree": 2, "girth": gi}))
    if delta >= 3:
        out.append(AppliedResult("line-graph-brooks", 2 * delta - 2, False, {"max_degree": delta}))
    k, _ = degeneracy(g)
    if k <= 2:
        out.append(AppliedResult("2-degenerate", delta + 1, False, {"degeneracy": k}))
    for i in (0, 1):
        try:
            peel_order(g, i)
        except PeelingStuck:
            continue
        out.append(AppliedResult("degree-sum-peeling", delta + i, False, {"i": i}))
        break
    planar = "claimed" if planar_claim else ("forest" if forest else None)
    if planar:
        for case, s, t, dmin in _ADJACENT_CYCLE_CASES:
            if delta < dmin:
                continue
            found, _ = has_adjacent_short_cycles(g, s, t)
            if not found:
                out.append(AppliedResult(case, delta + 1, False, {"planar": planar, "s": s, "t": t, "max_degree": delta}))
        if gi >= 5:
            out.append(AppliedResult("planar-girth-5", delta + 1, False, {"planar": planar, "girth": _json_girth(gi)}))
        if gi >= 4 and delta >= 6:
            out.append(AppliedResult("planar-girth-4-maxdeg-6", delta + 1, False, {"planar": planar, "girth": _json_girth(gi), "max_degree": delta}))
        usable = [d for d in range(3, delta + 1) if gi >= 4 + math.ceil(8 / (d - 2))]
        if usable:
            out.append(AppliedResult("T5", delta, True, {"planar": planar, "girth": _json_girth(gi), "delta_params": usable}))
    return out


def classify_bound(g, planar_claim=False):
    """Smallest upper bound on the group edge choice number among applicable results.

    ``planar_claim`` asserts planarity (it is not tested); forests count as
    planar regardless.  Disconnected graphs are classified per component.
    """
    delta = g.max_degree
    comps = [c for c in g.components() if len(c) > 1]
    if not comps:
        return BoundReport([AppliedResult("edgeless", 1, True, {})], 1, 1 if g.n else 0, True)
    results = []
    predicted = 0
    for comp in comps:
        sub = g if len(comp) == g.n else g.induced(comp)
        rs = _classify_component(sub, planar_claim)
        if len(comps) > 1:
            rs = [AppliedResult(r.result_id, r.bound, r.exact, {**r.hypotheses, "component": comp}) for r in rs]
        predicted = max(predicted, min(r.bound for r in rs))
        results.extend(rs)
    return BoundReport(results, predicted, delta, predicted == delta)
