"""Integer enumeration of series-parallel networks of n unit resistors.

Conventions used throughout:

* ``total(n)`` is the number of distinct n-circuits.
* ``series_count(n)`` is the number of series n-circuits, which equals the
  number of parallel n-circuits (the unit circuit counts as both, so
  total(n) = 2*series_count(n) for n >= 2 and total(1) = 1).
* ``appearances(i, n)`` is the multiplicity of any fixed parallel i-circuit
  among the sub-circuits of the n-omnicircuit (the series connection of all
  n-circuits).  It is defined only for 1 <= i <= n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from gmpy2 import mpz

from .errors import InternalConsistencyError, TableUnderflowError
from .numerics import binomial


@dataclass(frozen=True)
class Partition:
    """An integer partition stored in non-increasing order."""

    parts: tuple[int, ...]

    def __post_init__(self):
        if not self.parts or any(p < 1 for p in self.parts):
            raise ValueError("partition parts must be positive")
        if any(a < b for a, b in zip(self.parts, self.parts[1:])):
            raise ValueError("partition parts must be non-increasing")

    @property
    def n(self) -> int:
        return sum(self.parts)

    def support(self) -> tuple[int, ...]:
        """Distinct part sizes, ascending."""
        return tuple(sorted(set(self.parts)))

    def multiplicity(self, i: int) -> int:
        return self.parts.count(i)

    def __iter__(self) -> Iterator[int]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)


def _partition_tuples(remaining: int, max_part: int) -> Iterator[tuple[int, ...]]:
    if remaining == 0:
        yield ()
        return
    for first in range(min(max_part, remaining), 0, -1):
        for rest in _partition_tuples(remaining - first, first):
            yield (first,) + rest


def partitions(n: int) -> list[Partition]:
    """All partitions of n, non-increasing parts, reverse-lexicographic order."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return [Partition(t) for t in _partition_tuples(n, n)]


class CountTable:
    """Immutable tables of circuit counts up to a fixed limit.

    The appearance triangle is optional; build it with
    :func:`appearance_table` when the recurrence form is needed.
    """

    __slots__ = ("limit", "_total", "_series", "_appearances")

    def __init__(
        self,
        total: Sequence[int],
        series: Sequence[int],
        appearances: dict[int, list[int]] | None = None,
    ):
        self.limit = len(total) - 1
        self._total = tuple(total)
        self._series = tuple(series)
        self._appearances = appearances

    def total(self, n: int) -> int:
        """Number of n-circuits (total(0) = 1 by convention)."""
        if not 0 <= n <= self.limit:
            raise TableUnderflowError(f"count table holds n <= {self.limit}, got {n}")
        return self._total[n]

    def series_count(self, n: int) -> int:
        if not 0 <= n <= self.limit:
            raise TableUnderflowError(f"count table holds n <= {self.limit}, got {n}")
        return self._series[n]

    @property
    def totals(self) -> tuple[int, ...]:
        return self._total

    @property
    def series_counts(self) -> tuple[int, ...]:
        return self._series

    @property
    def has_appearances(self) -> bool:
        return self._appearances is not None

    def appearances(self, i: int, n: int) -> int:
        """Triangle entry for 1 <= i <= n, from the stored recurrence table."""
        if self._appearances is None:
            raise TableUnderflowError("appearance triangle not built for this table")
        if not 1 <= i <= n:
            raise ValueError(f"appearances defined only for 1 <= i <= n, got ({i}, {n})")
        row = self._appearances.get(i)
        if row is None or n - i >= len(row):
            raise TableUnderflowError(f"appearance triangle does not reach ({i}, {n})")
        return row[n - i]


def count_table(limit: int) -> CountTable:
    """Fill total counts 0..limit with the O(n^2 log n) recursion.

    total(n) = (1/n) * ( -[n=1] + 2*sum_{i<n} total(i)
                         + sum_{i=2}^{n-1} i*total(i)*sum_{j>=1} total(n-i*j) ).

    The division by n must be exact; a remainder means the implementation
    is broken, not the input.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    total = [mpz(1)]
    prefix = mpz(1)  # sum of total(0..n-1)
    for n in range(1, limit + 1):
        acc = 2 * prefix - (1 if n == 1 else 0)
        for i in range(2, n):
            inner = mpz(0)
            m = n - i
            while m >= 0:
                inner += total[m]
                m -= i
            acc += i * total[i] * inner
        q, r = divmod(acc, n)
        if r != 0:
            raise InternalConsistencyError(
                f"count recursion produced a non-integral value at n={n}"
            )
        total.append(q)
        prefix += q
    totals = [int(v) for v in total]
    series = [1] + [(t + (1 if n == 1 else 0)) // 2 for n, t in enumerate(totals[1:], 1)]
    return CountTable(totals, series)


def appearance_table(limit: int, counts: CountTable) -> CountTable:
    """Return a copy of `counts` with the appearance triangle filled to `limit`.

    Uses the recurrence appearances(i, n) = appearances(i, n-i) + total(n-i),
    with appearances(i, m) treated as 0 for m < i.
    """
    if limit > counts.limit:
        raise TableUnderflowError("appearance limit exceeds the count table")
    tri: dict[int, list[int]] = {}
    for i in range(1, limit + 1):
        row = []
        for n in range(i, limit + 1):
            prev = row[n - 2 * i] if n - i >= i else 0
            row.append(prev + counts.total(n - i))
        tri[i] = row
    return CountTable(counts.totals[: limit + 1], counts.series_counts[: limit + 1], tri)


def appearances_closed_form(i: int, n: int, counts: CountTable) -> int:
    """sum_{k=1..floor(n/i)} total(n - k*i); equals the triangle entry."""
    if not 1 <= i <= n:
        raise ValueError(f"requires 1 <= i <= n, got ({i}, {n})")
    acc = 0
    m = n - i
    while m >= 0:
        acc += counts.total(m)
        m -= i
    return acc


def circuits_from_partition(p: Partition, counts: CountTable) -> int:
    """Number of series circuits whose parallel sub-circuit sizes are exactly p.

    For each distinct part size i with multiplicity v, sums over the
    partitions t of v the number of ways to realize the repetition pattern
    t with distinct parallel i-circuits:
    binomial(series_count(i), |t|) * |t|! / prod_j multiplicity_t(j)!.

    A single-part partition yields series_count(n): the "series connection"
    of one parallel circuit is that circuit itself.
    """
    result = 1
    for i in p.support():
        v = p.multiplicity(i)
        try:
            q_i = counts.series_count(i)
        except TableUnderflowError:
            raise TableUnderflowError(
                f"partition needs series counts up to {i}, table holds {counts.limit}"
            ) from None
        factor = 0
        for t in partitions(v):
            size = len(t)
            ways = binomial(q_i, size) * math.factorial(size)
            for j in set(t.parts):
                ways //= math.factorial(t.parts.count(j))
            factor += ways
        result *= factor
    return result


def divisor_count(n: int) -> int:
    """Number of positive divisors of n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            count += 1 if d * d == n else 2
        d += 1
    return count


def double_count_identity(n: int, counts: CountTable) -> bool:
    """Resistor double count over the omnicircuit.

    n*total(n) = 2*appearances(1, n) - [n=1]
                 + sum_{i=2}^{n-1} i*total(i)*appearances(i, n).
    """
    rhs = 2 * appearances_closed_form(1, n, counts) - (1 if n == 1 else 0)
    for i in range(2, n):
        rhs += i * counts.total(i) * appearances_closed_form(i, n, counts)
    return n * counts.total(n) == rhs


def divisor_sum_identity(n: int, counts: CountTable) -> bool:
    """sum_{i<=n} appearances(i, n) = sum_{i<=n} divisor_count(i)*total(n-i)."""
    lhs = sum(appearances_closed_form(i, n, counts) for i in range(1, n + 1))
    rhs = sum(divisor_count(i) * counts.total(n - i) for i in range(1, n + 1))
    return lhs == rhs


def window_sum_identity(i: int, n: int, counts: CountTable) -> bool:
    """sum_{k=1..i} appearances(i, n+k) = sum_{k=0..n} total(k).

    Window entries with n+k < i are taken as 0, the same convention the
    appearance recurrence uses below its diagonal.
    """
    lhs = sum(
        appearances_closed_form(i, n + k, counts)
        for k in range(1, i + 1)
        if n + k >= i
    )
    rhs = sum(counts.total(k) for k in range(n + 1))
    return lhs == rhs
