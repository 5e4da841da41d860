"""Exact-rational discharging on plane graphs.

Initial charges are ``(n/2 - m) d(v) - n`` on vertices and ``m d(f) - n``
on faces, which total ``-2n`` on any connected sphere embedding.  Rules
move charge between vertices and faces; the engine reports what is left.
"""
from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction

from .graphcore import triangle_edges

__all__ = [
    "ChargeSystem",
    "Rule",
    "Tier",
    "Endpoint",
    "ChargeMap",
    "InvalidParametersError",
    "UnresolvedParameterError",
    "INCIDENCE",
    "VERTEX_ADJACENCY",
    "TRIANGLE_GUARDED_ADJACENCY",
    "FACE_ADJACENCY",
    "CASES",
    "initial_charges",
    "builtin_ruleset",
    "apply_rules",
    "nonnegativity_report",
    "rules_to_json",
    "rules_from_json",
    "charge_map_csv",
]

INCIDENCE = "incidence"
VERTEX_ADJACENCY = "vertex-adjacency"
TRIANGLE_GUARDED_ADJACENCY = "vertex-adjacency-with-triangle-guard"
FACE_ADJACENCY = "face-adjacency-per-shared-edge"
_RELATIONS = (INCIDENCE, VERTEX_ADJACENCY, TRIANGLE_GUARDED_ADJACENCY, FACE_ADJACENCY)

MAX_DEGREE = "max"  # degree bound standing for the graph's maximum degree
CASES = ("T4-1", "T4-2", "T4-3", "T4-4", "T5")


class InvalidParametersError(ValueError):
    pass


class UnresolvedParameterError(ValueError):
    pass


@dataclass(frozen=True)
class ChargeSystem:
    m: int
    n: int

    def __post_init__(self):
        if not self.n > 2 * self.m > 0:
            raise InvalidParametersError(f"need n > 2m > 0, got m={self.m}, n={self.n}")

    def vertex_charge(self, d):
        return (Fraction(self.n, 2) - self.m) * d - self.n

    def face_charge(self, d):
        return Fraction(self.m * d - self.n)


# amount expressions in the parameter D
_EXPRS = {
    "2-6/D": lambda D: 2 - Fraction(6, D),
    "6/D-1": lambda D: Fraction(6, D) - 1,
}


@dataclass(frozen=True)
class Endpoint:
    kind: str  # "vertex" or "face"
    deg_lo: object = 0  # int or MAX_DEGREE
    deg_hi: object = None  # None means unbounded; int or MAX_DEGREE

    def resolve(self, max_degree):
        lo = max_degree if self.deg_lo == MAX_DEGREE else self.deg_lo
        hi = max_degree if self.deg_hi == MAX_DEGREE else self.deg_hi
        return lo, (math.inf if hi is None else hi)


@dataclass(frozen=True)
class Tier:
    """Amount paid to targets whose degree lies in ``[deg_lo, deg_hi]``."""

    deg_lo: int
    deg_hi: object  # int or None for unbounded
    amount: object  # Fraction or an expression key of _EXPRS

    def value(self, delta):
        if isinstance(self.amount, str):
            if delta is None:
                raise UnresolvedParameterError(f"amount {self.amount!r} needs the parameter D")
            return _EXPRS[self.amount](delta)
        return Fraction(self.amount)


@dataclass(frozen=True)
class Rule:
    name: str
    source: Endpoint
    target_kind: str
    relation: str
    tiers: tuple

    def amount_for(self, target_degree, delta):
        for t in self.tiers:
            hi = math.inf if t.deg_hi is None else t.deg_hi
            if t.deg_lo <= target_degree <= hi:
                return t.value(delta)
        return None


@dataclass
class ChargeMap:
    """Charges keyed by ``("v", id)`` and ``("f", id)``; ``degree`` mirrors the keys."""

    before: dict
    after: dict
    degree: dict

    def total_before(self):
        return sum(self.before.values(), Fraction(0))

    def total_after(self):
        return sum(self.after.values(), Fraction(0))

    def conserved(self):
        return self.total_before() == self.total_after()


def initial_charges(pg, m, n):
    sys_ = ChargeSystem(m, n)
    before, degree = {}, {}
    for v in range(pg.graph.n):
        d = pg.graph.degree(v)
        before[("v", v)] = sys_.vertex_charge(d)
        degree[("v", v)] = d
    for f in pg.faces:
        before[("f", f.id)] = sys_.face_charge(f.degree)
        degree[("f", f.id)] = f.degree
    return ChargeMap(before, dict(before), degree)


def _v(lo, hi=None):
    return Endpoint("vertex", lo, hi)


def _f(lo, hi=None):
    return Endpoint("face", lo, hi)


F = Fraction


def builtin_ruleset(case, delta=None):
    """``(m, n, rules)`` for one of ``CASES``; ``T5`` needs ``delta >= 3``."""
    if case == "T4-1":
        return 2, 6, [
            Rule("R1.1", _f(4), "vertex", INCIDENCE, (Tier(3, 5, F(1)),)),
            Rule("R1.2", _v(8), "vertex", TRIANGLE_GUARDED_ADJACENCY, (Tier(3, 3, F(1, 2)),)),
        ]
    if case == "T4-2":
        return 3, 10, [
            Rule("R2.1", _v(6), "vertex", VERTEX_ADJACENCY, (Tier(3, 3, F(1, 3)),)),
            Rule("R2.2", _f(4, 4), "vertex", INCIDENCE, (Tier(3, 3, F(1)), Tier(4, 4, F(1, 2)))),
            Rule("R2.3", _f(5), "vertex", INCIDENCE, (Tier(3, 3, F(3, 2)), Tier(4, 4, F(1)))),
            Rule("R2.4", _f(5), "face", FACE_ADJACENCY, (Tier(3, 3, F(1, 3)),)),
        ]
    if case == "T4-3":
        return 2, 6, [
            Rule("R3.1", _f(5, 5), "vertex", INCIDENCE, (Tier(3, 3, F(1)), Tier(4, 4, F(1, 2)), Tier(5, 5, F(1, 5)))),
            Rule("R3.2", _f(6), "vertex", INCIDENCE, (Tier(3, 3, F(3, 2)), Tier(4, 4, F(1)), Tier(5, 5, F(1, 3)))),
        ]
    if case == "T4-4":
        return 2, 6, [
            Rule("R4.1", _f(5, 7), "vertex", INCIDENCE, (Tier(3, 3, F(1)), Tier(4, None, F(1, 2)))),
            Rule("R4.2", _f(8), "vertex", INCIDENCE, (Tier(3, 3, F(3, 2)), Tier(4, None, F(1)))),
        ]
    if case == "T5":
        if delta is None or delta < 3:
            raise InvalidParametersError(f"T5 needs delta >= 3, got {delta}")
        # charges 2d(v) - 6 and d(f) - 6
        return 1, 6, [
            Rule("R1", _v(MAX_DEGREE, MAX_DEGREE), "vertex", VERTEX_ADJACENCY, (Tier(2, 2, "2-6/D"),)),
            Rule("R2", _f(0), "vertex", INCIDENCE, (Tier(2, 2, "6/D-1"),)),
        ]
    raise ValueError(f"unknown case {case!r}; expected one of {CASES}")


def _in(lo_hi, d):
    lo, hi = lo_hi
    return lo <= d <= hi


def apply_rules(pg, m, n, rules, delta=None):
    """Initial charges for ``(m, n)`` followed by one simultaneous pass of ``rules``.

    Rules whose amounts mention ``D`` need ``delta >= 3``.
    """
    if delta is not None and delta < 3:
        raise UnresolvedParameterError(f"parameter D must be >= 3, got {delta}")
    if delta is None and any(isinstance(t.amount, str) for r in rules for t in r.tiers):
        raise UnresolvedParameterError("rules use the parameter D but none was supplied")
    cm = initial_charges(pg, m, n)
    g = pg.graph
    after = cm.after
    maxdeg = g.max_degree
    tri = None

    def move(src, dst, amount):
        after[src] -= amount
        after[dst] += amount

    for rule in rules:
        src_range = rule.source.resolve(maxdeg)
        if rule.relation == INCIDENCE:
            for f in pg.faces:
                if not _in(src_range, f.degree):
                    continue
                for v, mult in sorted(f.multiplicity.items()):
                    amt = rule.amount_for(g.degree(v), delta)
                    if amt is not None:
                        move(("f", f.id), ("v", v), amt * mult)
        elif rule.relation in (VERTEX_ADJACENCY, TRIANGLE_GUARDED_ADJACENCY):
            if rule.relation == TRIANGLE_GUARDED_ADJACENCY and tri is None:
                tri = triangle_edges(g)
            for e in g.edges:
                if tri is not None and rule.relation == TRIANGLE_GUARDED_ADJACENCY and e not in tri:
                    continue
                for u, v in (e, e[::-1]):
                    if _in(src_range, g.degree(u)):
                        amt = rule.amount_for(g.degree(v), delta)
                        if amt is not None:
                            move(("v", u), ("v", v), amt)
        elif rule.relation == FACE_ADJACENCY:
            for u, v in g.edges:
                a, b = pg.dart_face[(u, v)], pg.dart_face[(v, u)]
                for x, y in ((a, b), (b, a)):
                    if _in(src_range, pg.faces[x].degree):
                        amt = rule.amount_for(pg.faces[y].degree, delta)
                        if amt is not None:
                            move(("f", x), ("f", y), amt)
        else:
            raise ValueError(f"unknown relation {rule.relation!r}")
    return cm


def nonnegativity_report(cm):
    """Elements with negative final charge, most negative first."""
    neg = [(key, val) for key, val in cm.after.items() if val < 0]
    neg.sort(key=lambda kv: (kv[1], kv[0]))
    return neg


# ---- serialization -----------------------------------------------------------


def _amount_to_json(a):
    if isinstance(a, str):
        return {"expr": a}
    a = Fraction(a)
    return {"num": a.numerator, "den": a.denominator}


def _amount_from_json(obj):
    if "expr" in obj:
        if obj["expr"] not in _EXPRS:
            raise ValueError(f"unknown amount expression {obj['expr']!r}")
        return obj["expr"]
    return Fraction(obj["num"], obj["den"])


def rules_to_json(rules):
    out = []
    for r in rules:
        lo = min(t.deg_lo for t in r.tiers)
        his = [t.deg_hi for t in r.tiers]
        out.append({
            "name": r.name,
            "source": {"kind": r.source.kind, "deg_lo": r.source.deg_lo, "deg_hi": r.source.deg_hi},
            "target": {"kind": r.target_kind, "deg_lo": lo, "deg_hi": None if None in his else max(his)},
            "relation": r.relation,
            "tiers": [
                {"deg_lo": t.deg_lo, "deg_hi": t.deg_hi, "amount": _amount_to_json(t.amount)} for t in r.tiers
            ],
        })
    return out


def rules_from_json(data):
    """Inverse of :func:`rules_to_json`.

    A rule may give a single ``amount`` for its whole ``target`` interval
    instead of a ``tiers`` list.
    """
    rules = []
    for i, r in enumerate(data):
        if r["relation"] not in _RELATIONS:
            raise ValueError(f"rule {i}: unknown relation {r['relation']!r}")
        src = r["source"]
        tgt = r["target"]
        if "tiers" in r:
            tiers = tuple(Tier(t["deg_lo"], t["deg_hi"], _amount_from_json(t["amount"])) for t in r["tiers"])
        else:
            tiers = (Tier(tgt.get("deg_lo", 0), tgt.get("deg_hi"), _amount_from_json(r["amount"])),)
        rules.append(Rule(
            r.get("name", f"rule{i}"),
            Endpoint(src["kind"], src.get("deg_lo", 0), src.get("deg_hi")),
            tgt["kind"],
            r["relation"],
            tiers,
        ))
    return rules


def _frac(x):
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def charge_map_csv(cm):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["element", "kind", "degree", "before", "after"])
    for key in sorted(cm.before, key=lambda k: (k[0] != "v", k[1])):
        kind = "vertex" if key[0] == "v" else "face"
        w.writerow([key[1], kind, cm.degree[key], _frac(cm.before[key]), _frac(cm.after[key])])
    return buf.getvalue()
