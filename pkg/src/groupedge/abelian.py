"""Finite Abelian groups in invariant-factor form.

Elements are plain tuples of residues, one per invariant factor.  Each
:class:`Group` also carries dense index tables so the solvers can work on
small integers instead of tuples.
"""
from __future__ import annotations

import itertools
import math
import re
from functools import cached_property

__all__ = [
    "Group",
    "InvalidGroupError",
    "InvalidElementError",
    "make_group",
    "parse_group",
    "elt_arith",
    "enumerate_elements",
    "abelian_groups_of_order",
    "integer_partitions",
]


class InvalidGroupError(ValueError):
    pass


class InvalidElementError(ValueError):
    pass


def _factorize(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _invariant_factors(prime_powers):
    """Combine {p: [exponents]} into a divisibility chain n1 | n2 | ... ."""
    length = max((len(e) for e in prime_powers.values()), default=0)
    factors = [1] * length
    for p, exps in prime_powers.items():
        # largest exponents go to the largest (last) factors
        for slot, e in zip(range(length - 1, -1, -1), sorted(exps, reverse=True)):
            factors[slot] *= p ** e
    return tuple(factors)


class Group:
    """The group Z_{n1} x ... x Z_{nr} with n1 | n2 | ... | nr.

    Construct through :func:`make_group`, which normalizes arbitrary cyclic
    factor lists.  Instances are immutable and hash by their factors, so
    two groups compare equal exactly when they are isomorphic.
    """

    def __init__(self, invariant_factors):
        factors = tuple(int(x) for x in invariant_factors)
        for a, b in zip(factors, factors[1:]):
            if b % a:
                raise InvalidGroupError(f"{factors} is not a divisibility chain")
        if any(x < 2 for x in factors):
            raise InvalidGroupError(f"invariant factors must be >= 2, got {factors}")
        self._factors = factors

    @property
    def invariant_factors(self):
        return self._factors

    @property
    def order(self):
        return math.prod(self._factors)

    def __len__(self):
        return self.order

    def __eq__(self, other):
        return isinstance(other, Group) and other._factors == self._factors

    def __hash__(self):
        return hash(("Group", self._factors))

    def __repr__(self):
        return f"Group({list(self._factors)})"

    def __str__(self):
        if not self._factors:
            return "Z1"
        return "x".join(f"Z{n}" for n in self._factors)

    @property
    def zero(self):
        return (0,) * len(self._factors)

    def check(self, a):
        """Return ``a`` as a tuple, raising if it is not an element."""
        if isinstance(a, int) and len(self._factors) == 1:
            a = (a,)
        a = tuple(a)
        if len(a) != len(self._factors):
            raise InvalidElementError(
                f"element {a} has arity {len(a)}, group {self} needs {len(self._factors)}"
            )
        if any(not 0 <= x < n for x, n in zip(a, self._factors)):
            raise InvalidElementError(f"element {a} not reduced in {self}")
        return a

    def add(self, a, b):
        return tuple((x + y) % n for x, y, n in zip(a, b, self._factors))

    def neg(self, a):
        return tuple(-x % n for x, n in zip(a, self._factors))

    def sub(self, a, b):
        return tuple((x - y) % n for x, y, n in zip(a, b, self._factors))

    # ---- dense index tables used by the solvers -------------------------

    @cached_property
    def elements(self):
        return tuple(itertools.product(*(range(n) for n in self._factors)))

    @cached_property
    def _index(self):
        return {a: i for i, a in enumerate(self.elements)}

    def index(self, a):
        return self._index[self.check(a)]

    @cached_property
    def add_table(self):
        els = self.elements
        idx = self._index
        return tuple(tuple(idx[self.add(a, b)] for b in els) for a in els)

    @cached_property
    def sub_table(self):
        els = self.elements
        idx = self._index
        return tuple(tuple(idx[self.sub(a, b)] for b in els) for a in els)

    def to_json(self):
        return list(self._factors)


def make_group(factors):
    """Normalize a list of cyclic orders into invariant-factor form.

    >>> make_group([3, 2]).invariant_factors
    (6,)
    >>> make_group([2, 4, 2]).invariant_factors
    (2, 2, 4)
    """
    if isinstance(factors, Group):
        return factors
    factors = [int(x) for x in factors]
    bad = [x for x in factors if x <= 1]
    if bad:
        raise InvalidGroupError(f"cyclic factors must be >= 2, got {bad}")
    prime_powers = {}
    for n in factors:
        for p, e in _factorize(n).items():
            prime_powers.setdefault(p, []).append(e)
    return Group(_invariant_factors(prime_powers))


def parse_group(text):
    """Parse ``"Z4"``, ``"Z2xZ2"`` or ``"Z1"`` into a :class:`Group`."""
    parts = text.strip().replace(" ", "").split("x")
    orders = []
    for part in parts:
        m = re.fullmatch(r"Z(\d+)", part)
        if not m:
            raise InvalidGroupError(f"cannot parse group {text!r}")
        orders.append(int(m.group(1)))
    if orders == [1]:
        return make_group([])
    return make_group(orders)


def elt_arith(g, a, b=None, op="add"):
    a = g.check(a)
    if op == "neg":
        return g.neg(a)
    b = g.check(b)
    if op == "add":
        return g.add(a, b)
    if op == "sub":
        return g.sub(a, b)
    raise ValueError(f"unknown op {op!r}")


def enumerate_elements(g):
    return list(g.elements)


def integer_partitions(k, largest=None):
    """Yield the partitions of ``k`` as non-increasing tuples."""
    if largest is None:
        largest = k
    if k == 0:
        yield ()
        return
    for first in range(min(k, largest), 0, -1):
        for rest in integer_partitions(k - first, first):
            yield (first,) + rest


def abelian_groups_of_order(n):
    """All isomorphism classes of Abelian groups of order ``n``.

    Sorted by invariant-factor tuple length, so the cyclic group comes first.
    """
    if n <= 0:
        raise InvalidGroupError(f"group order must be positive, got {n}")
    primes = sorted(_factorize(n).items())
    choices = [list(integer_partitions(e)) for _, e in primes]
    groups = []
    for combo in itertools.product(*choices):
        prime_powers = {p: list(part) for (p, _), part in zip(primes, combo)}
        groups.append(Group(_invariant_factors(prime_powers)))
    groups.sort(key=lambda g: (len(g.invariant_factors), g.invariant_factors))
    return groups
