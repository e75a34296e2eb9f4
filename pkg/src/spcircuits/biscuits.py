"""Binary circuits ("biscuits"): one resistor appended at a time.

A biscuit is identified by its construction word — the sequence of
append-series / append-parallel steps applied to the unit resistor.  The
construction is invertible, so the word is the canonical identity and the
2^(n-1) words of length n-1 give exactly 2^(n-1) distinct resistances.

Appending to a reduced resistance a/b:

    append-series:   a/b -> (a+b)/b
    append-parallel: a/b -> a/(a+b)

Both maps preserve reducedness (gcd(a+b, b) = gcd(a, b)), which is what
makes them injective and the resistances unique.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import Sequence

from .errors import BudgetExceededError

ENUMERATE_BUDGET = 24

APPEND_SERIES = "S"
APPEND_PARALLEL = "P"


def phi_series(r: Fraction) -> Fraction:
    """Resistance after adding one unit resistor in series: a/b -> (a+b)/b."""
    if r <= 0:
        raise ValueError("resistance must be positive")
    return r + 1


def phi_parallel(r: Fraction) -> Fraction:
    """Resistance after adding one unit resistor in parallel: a/b -> a/(a+b)."""
    if r <= 0:
        raise ValueError("resistance must be positive")
    return r / (r + 1)


@dataclass(frozen=True)
class Biscuit:
    """A binary circuit, identified by its construction word."""

    word: str  # over {"S", "P"}; empty word is the unit resistor
    resistance: Fraction

    @property
    def n(self) -> int:
        """Number of unit resistors."""
        return len(self.word) + 1

    @property
    def kind(self) -> str:
        """Connection type of the outermost step; the unit is 'unit'."""
        if not self.word:
            return "unit"
        return "series" if self.word[-1] == APPEND_SERIES else "parallel"


def from_word(word: str) -> Biscuit:
    """Build a biscuit by applying the word left to right to the unit."""
    r = Fraction(1)
    for step in word:
        if step == APPEND_SERIES:
            r = phi_series(r)
        elif step == APPEND_PARALLEL:
            r = phi_parallel(r)
        else:
            raise ValueError(f"construction steps must be 'S' or 'P', got {step!r}")
    return Biscuit(word, r)


def enumerate_biscuits(n: int, budget: int = ENUMERATE_BUDGET) -> list[Biscuit]:
    """All 2^(n-1) n-biscuits, ordered by construction word."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > budget:
        raise BudgetExceededError(f"enumeration of n={n} biscuits exceeds budget {budget}")
    return [
        from_word("".join(w))
        for w in product((APPEND_SERIES, APPEND_PARALLEL), repeat=n - 1)
    ]


def resistance_levels(limit: int, budget: int = ENUMERATE_BUDGET) -> list[list[Fraction]]:
    """Resistances of all n-biscuits for n = 1..limit, built level by level.

    Level n is the series-appended images of level n-1 followed by the
    parallel-appended images, so for n > 1 the first half of a level is
    the series biscuits and the second half the parallel ones.  Shares
    work across sizes: O(2^limit) total instead of per-size rebuilds.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > budget:
        raise BudgetExceededError(f"biscuit levels to n={limit} exceed budget {budget}")
    levels = [[Fraction(1)]]
    for _ in range(2, limit + 1):
        prev = levels[-1]
        levels.append([r + 1 for r in prev] + [r / (r + 1) for r in prev])
    return levels


@dataclass(frozen=True)
class BiscuitClosedForms:
    """Exact means and totals of n-biscuit resistances.

    For n = 1 the unit resistor is its own series and parallel biscuit;
    the per-kind fields are only meaningful for n > 1.
    """

    n: int
    count: int  # number of n-biscuits
    mean: Fraction  # over all n-biscuits
    series_mean: Fraction | None
    parallel_mean: Fraction | None
    total: Fraction
    series_total: Fraction | None
    parallel_total: Fraction | None


def biscuit_closed_forms(n: int) -> BiscuitClosedForms:
    """Closed forms: mean 3/2 - 2^-n; for n > 1 the series/parallel means
    are 5/2 - 2^(1-n) and 1/2, with totals (3/4)2^n - 1/2, (5/8)2^n - 1/2
    and (1/8)2^n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    half_pow = Fraction(1, 2**n)
    mean = Fraction(3, 2) - half_pow
    total = Fraction(3, 4) * 2**n - Fraction(1, 2)
    if n == 1:
        return BiscuitClosedForms(1, 1, mean, None, None, total, None, None)
    return BiscuitClosedForms(
        n=n,
        count=2 ** (n - 1),
        mean=mean,
        series_mean=Fraction(5, 2) - 2 * half_pow,
        parallel_mean=Fraction(1, 2),
        total=total,
        series_total=Fraction(5, 8) * 2**n - Fraction(1, 2),
        parallel_total=Fraction(1, 8) * 2**n,
    )


def harmonic_mix(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    """Average over all pairs of the harmonic combination xy/(x+y)."""
    total = Fraction(0)
    for x in p:
        for y in q:
            total += x * y / (x + y)
    return total / (len(p) * len(q))


def harmonic_mix_of_means(p: Sequence[Fraction], q: Sequence[Fraction]) -> Fraction:
    """Harmonic combination of the two averages."""
    mp_ = sum(p, Fraction(0)) / len(p)
    mq = sum(q, Fraction(0)) / len(q)
    return mp_ * mq / (mp_ + mq)
