"""Canonical rooted-tree representation of series-parallel unit-resistor
circuits.

A circuit is the unit resistor, a series combination of two or more
parallel-or-unit circuits, or a parallel combination of two or more
series-or-unit circuits (connection types strictly alternate).  Children
are kept as a canonically ordered multiset — sorted by their serialized
form — so equal circuits have identical serializations and compare equal.

Grammar (bit-exact, no whitespace):

    circuit := "*" | "S(" list ")" | "P(" list ")"
    list    := circuit ("," circuit)*
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations_with_replacement, product
from typing import Iterable, Iterator

from .counting import partitions
from .errors import AlternationError, ArityError, BudgetExceededError, ParseError

UNIT_KIND = "unit"
SERIES_KIND = "series"
PARALLEL_KIND = "parallel"

ENUMERATE_BUDGET = 12
OMNICIRCUIT_BUDGET = 8


class Circuit:
    """Immutable canonical circuit tree.

    Do not call the constructor directly; use :data:`UNIT`,
    :func:`series` and :func:`parallel`, which validate and canonicalize.
    """

    __slots__ = ("kind", "children", "key")

    def __init__(self, kind: str, children: tuple["Circuit", ...], key: str):
        self.kind = kind
        self.children = children
        self.key = key

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Circuit):
            return NotImplemented
        return self.key == other.key

    def __lt__(self, other: "Circuit") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        return f"Circuit({self.key!r})"

    @property
    def is_unit(self) -> bool:
        return self.kind == UNIT_KIND

    def is_series(self) -> bool:
        """The unit circuit counts as both series and parallel."""
        return self.kind != PARALLEL_KIND

    def is_parallel(self) -> bool:
        return self.kind != SERIES_KIND

    def size(self) -> int:
        """Number of unit resistors."""
        if self.is_unit:
            return 1
        return sum(c.size() for c in self.children)


UNIT = Circuit(UNIT_KIND, (), "*")


def _combine(kind: str, children: Iterable[Circuit]) -> Circuit:
    kids = sorted(children, key=lambda c: c.key)
    if len(kids) < 2:
        raise ArityError(f"a {kind} node needs at least 2 children, got {len(kids)}")
    for c in kids:
        if c.kind == kind:
            raise AlternationError(f"a {kind} node may not contain a {c.kind} child")
    tag = "S" if kind == SERIES_KIND else "P"
    key = tag + "(" + ",".join(c.key for c in kids) + ")"
    return Circuit(kind, tuple(kids), key)


def series(children: Iterable[Circuit]) -> Circuit:
    """Series combination of unit/parallel circuits (canonicalized)."""
    return _combine(SERIES_KIND, children)


def parallel(children: Iterable[Circuit]) -> Circuit:
    """Parallel combination of unit/series circuits (canonicalized)."""
    return _combine(PARALLEL_KIND, children)


def canonicalize(c: Circuit) -> Circuit:
    """Rebuild a circuit bottom-up; idempotent, re-validates invariants."""
    if c.is_unit:
        return UNIT
    rebuilt = (canonicalize(child) for child in c.children)
    return series(rebuilt) if c.kind == SERIES_KIND else parallel(rebuilt)


def serialize(c: Circuit) -> str:
    return c.key


def parse(text: str) -> Circuit:
    """Parse the circuit grammar; raises :class:`ParseError` with offset."""

    def node(pos: int) -> tuple[Circuit, int]:
        if pos >= len(text):
            raise ParseError("unexpected end of input", pos)
        ch = text[pos]
        if ch == "*":
            return UNIT, pos + 1
        if ch not in "SP":
            raise ParseError(f"expected '*', 'S' or 'P', got {ch!r}", pos)
        kind = SERIES_KIND if ch == "S" else PARALLEL_KIND
        pos += 1
        if pos >= len(text) or text[pos] != "(":
            raise ParseError("expected '('", pos)
        pos += 1
        children = []
        while True:
            child, pos = node(pos)
            children.append(child)
            if pos >= len(text):
                raise ParseError("unexpected end of input", pos)
            if text[pos] == ",":
                pos += 1
                continue
            if text[pos] == ")":
                pos += 1
                break
            raise ParseError(f"expected ',' or ')', got {text[pos]!r}", pos)
        try:
            built = series(children) if kind == SERIES_KIND else parallel(children)
        except (AlternationError, ArityError) as exc:
            raise ParseError(str(exc), pos) from exc
        return built, pos

    c, end = node(0)
    if end != len(text):
        raise ParseError("trailing input after circuit", end)
    return c


def invert(c: Circuit) -> Circuit:
    """Swap series and parallel roles recursively.

    An involution; the resistance of the inverse is the reciprocal.
    """
    if c.is_unit:
        return UNIT
    kids = (invert(child) for child in c.children)
    return parallel(kids) if c.kind == SERIES_KIND else series(kids)


def resistance(c: Circuit) -> Fraction:
    """Exact total resistance with every unit resistor equal to 1."""
    if c.is_unit:
        return Fraction(1)
    if c.kind == SERIES_KIND:
        return sum(resistance(child) for child in c.children)
    return 1 / sum(1 / resistance(child) for child in c.children)


def depth(c: Circuit) -> int:
    """Maximum nesting of resistors: 0 for the unit circuit."""
    if c.is_unit:
        return 0
    return 1 + max(depth(child) for child in c.children)


class _Enumerator:
    """Memoized enumeration: series circuits of each size via partitions,
    parallel circuits by inversion."""

    def __init__(self):
        self._series: dict[int, list[Circuit]] = {1: [UNIT]}
        self._parallel: dict[int, list[Circuit]] = {1: [UNIT]}

    def series_circuits(self, n: int) -> list[Circuit]:
        if n not in self._series:
            out = []
            for p in partitions(n):
                if len(p) < 2:
                    continue
                pools = [
                    combinations_with_replacement(
                        self.parallel_circuits(i), p.multiplicity(i)
                    )
                    for i in p.support()
                ]
                for choice in product(*pools):
                    kids: list[Circuit] = []
                    for group in choice:
                        kids.extend(group)
                    out.append(series(kids))
            self._series[n] = out
        return self._series[n]

    def parallel_circuits(self, n: int) -> list[Circuit]:
        if n not in self._parallel:
            self._parallel[n] = [invert(c) for c in self.series_circuits(n)]
        return self._parallel[n]


_SHARED = _Enumerator()


def enumerate_circuits(n: int, budget: int = ENUMERATE_BUDGET) -> list[Circuit]:
    """All n-circuits, each exactly once, sorted by serialization.

    The unit circuit appears once at n=1.  Guarded by `budget` because the
    count grows as ~3.56^n.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > budget:
        raise BudgetExceededError(f"enumeration of n={n} exceeds budget {budget}")
    if n == 1:
        return [UNIT]
    all_circuits = _SHARED.series_circuits(n) + _SHARED.parallel_circuits(n)
    return sorted(all_circuits, key=lambda c: c.key)


def omnicircuit(n: int, budget: int = OMNICIRCUIT_BUDGET) -> Circuit:
    """Series connection of all n-circuits.

    Children are all parallel n-circuits plus, for every series n-circuit,
    its parallel sub-circuits.  Degenerates to the unit circuit at n=1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > budget:
        raise BudgetExceededError(f"omnicircuit of n={n} exceeds budget {budget}")
    if n == 1:
        return UNIT
    kids: list[Circuit] = list(_SHARED.parallel_circuits(n))
    for s in _SHARED.series_circuits(n):
        kids.extend(s.children)
    return series(kids)


def k_resistance(c: Circuit, k: float) -> float:
    """Power-mean generalization of resistance, evaluated by direct recursion.

    A k-series connection has value (sum r_k**k)**(1/k) and a k-parallel
    connection (sum r_k**(-k))**(-1/k); the ordinary resistance is k=1.
    Double precision: values are irrational for most k.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    if c.is_unit:
        return 1.0
    if c.kind == SERIES_KIND:
        return sum(k_resistance(child, k) ** k for child in c.children) ** (1.0 / k)
    return sum(k_resistance(child, k) ** -k for child in c.children) ** (-1.0 / k)
