"""Exact resistance distributions of n-circuits without enumerating circuits.

The generating identity: over classes (size i, resistance r) of parallel
circuits with population q, the series distributions are the coefficient
slices of  prod (1 - x^i t^r)^(-q)  after removing multiset sizes 0 and 1
(a series node needs at least two children).  Taking the logarithmic
derivative in x turns that product into the recurrence

    s * F[s] = sum_{i >= 1, j >= 1, ij <= s} i * shift_j(P[i]) (x) F[s - ij]

where P[i] is the parallel distribution at size i, shift_j scales every
resistance key by j, (x) is convolution that adds resistance keys and
multiplies multiplicities, F[s] is the full product slice, and the series
slice is S[s] = F[s] minus the singleton selections, i.e. F[s] = S[s] + P[s].
Parallel distributions are the pointwise reciprocal of series ones (the
inversion bijection), which closes the recursion.

Exact mode keys are reduced rationals and scales to n = 13 comfortably
(n = 14 by raising the budget).  Float mode quantizes keys to 48 fractional
bits packed in int64 — multiplicities stay exact integers, only the keys
are approximate — and reaches n = 21.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
from gmpy2 import mpq, mpz

from . import _kernels
from .counting import CountTable, appearances_closed_form, count_table
from .errors import BudgetExceededError, InternalConsistencyError

SERIES_KIND = "series"
PARALLEL_KIND = "parallel"

EXACT_BUDGET = 13
FLOAT_BUDGET = 21

#: Fractional bits used to quantize resistance keys in float mode.
FLOAT_KEY_BITS = 48
_SCALE = 1 << FLOAT_KEY_BITS
#: Target batch size (elements) for the float-mode aggregation buffers.
_BATCH = 1 << 24


@dataclass(frozen=True)
class ResistanceDistribution:
    """Multiset of resistances of all series (or parallel) n-circuits.

    `entries` maps an exact resistance to the number of distinct circuits
    attaining it; circuits of equal resistance are still distinct objects.
    """

    n: int
    kind: str
    entries: Mapping[Fraction, int]

    def count(self) -> int:
        """Number of circuits covered; equals the series count for size n."""
        return sum(self.entries.values())

    def total(self) -> Fraction:
        """Sum of resistance over all covered circuits."""
        return sum((r * m for r, m in self.entries.items()), Fraction(0))

    def mean(self) -> Fraction:
        return self.total() / self.count()

    def min_key(self) -> Fraction:
        return min(self.entries)

    def max_key(self) -> Fraction:
        return max(self.entries)

    def reciprocal(self) -> "ResistanceDistribution":
        """The distribution of the inverted circuits (same multiplicities)."""
        other = PARALLEL_KIND if self.kind == SERIES_KIND else SERIES_KIND
        return ResistanceDistribution(
            self.n, other, {1 / r: m for r, m in self.entries.items()}
        )

    def within_range_bounds(self) -> bool:
        """Resistance range check: for n > 1 series keys lie in [4/n, n]
        and parallel keys in [1/n, n/4]; at n = 1 the only key is 1."""
        n = self.n
        if n == 1:
            return set(self.entries) == {Fraction(1)}
        if self.kind == SERIES_KIND:
            lo, hi = Fraction(4, n), Fraction(n)
        else:
            lo, hi = Fraction(1, n), Fraction(n, 4)
        return lo <= self.min_key() and self.max_key() <= hi


@dataclass(frozen=True)
class SummaryRow:
    """Exact aggregate statistics of all n-circuits (unit counted once)."""

    n: int
    count: int
    series_total: Fraction
    parallel_total: Fraction
    total: Fraction
    mean: Fraction
    series_mean: Fraction
    parallel_mean: Fraction
    harmonic_mean: Fraction
    geometric_product: Fraction


def distributions(
    limit: int,
    counts: CountTable | None = None,
    budget: int = EXACT_BUDGET,
) -> list[tuple[ResistanceDistribution, ResistanceDistribution]]:
    """Exact (series, parallel) distribution pairs for n = 1..limit.

    Cross-checks every level's population against the independent count
    recursion and raises :class:`InternalConsistencyError` on mismatch.
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > budget:
        raise BudgetExceededError(
            f"exact distributions for n={limit} exceed budget {budget}"
        )
    if counts is None or counts.limit < limit:
        counts = count_table(limit)

    one = mpq(1)
    P: dict[int, dict] = {1: {one: mpz(1)}}
    S: dict[int, dict] = {1: {one: mpz(1)}}
    F: dict[int, dict] = {0: {mpq(0): mpz(1)}, 1: {one: mpz(1)}}
    for s in range(2, limit + 1):
        acc: dict = {}
        for i in range(1, s):
            for j in range(1, s // i + 1):
                rest = F[s - i * j]
                for r, q in P[i].items():
                    w = i * q
                    jr = j * r
                    for r2, w2 in rest.items():
                        k = jr + r2
                        if k in acc:
                            acc[k] += w * w2
                        else:
                            acc[k] = w * w2
        level: dict = {}
        for k, w in acc.items():
            v, rem = divmod(w, s)
            if rem:
                raise InternalConsistencyError(
                    f"distribution recurrence non-integral at n={s}, key={k}"
                )
            level[k] = v
        S[s] = level
        P[s] = {1 / k: v for k, v in level.items()}
        merged = dict(level)
        for k, v in P[s].items():
            if k in merged:
                merged[k] += v
            else:
                merged[k] = v
        F[s] = merged
        if sum(level.values()) != counts.series_count(s):
            raise InternalConsistencyError(
                f"distribution population at n={s} disagrees with the count table"
            )

    out = []
    for n in range(1, limit + 1):
        sd = {Fraction(int(k.numerator), int(k.denominator)): int(v) for k, v in S[n].items()}
        pd = {Fraction(int(k.numerator), int(k.denominator)): int(v) for k, v in P[n].items()}
        out.append(
            (
                ResistanceDistribution(n, SERIES_KIND, sd),
                ResistanceDistribution(n, PARALLEL_KIND, pd),
            )
        )
    return out


def _pair(dists: Sequence, n: int):
    if not 1 <= n <= len(dists):
        raise ValueError(f"distributions available for 1..{len(dists)}, got {n}")
    return dists[n - 1]


def summary(
    n: int,
    dists: Sequence[tuple[ResistanceDistribution, ResistanceDistribution]],
    counts: CountTable | None = None,
) -> SummaryRow:
    """Exact totals and means for size n, with an independent recomputation
    of the grand total from appearance counts (mismatch is a bug)."""
    sd, pd = _pair(dists, n)
    unit = 1 if n == 1 else 0
    series_total = sd.total()
    parallel_total = pd.total()
    total = series_total + parallel_total - unit
    count = sd.count() + pd.count() - unit

    if counts is None or counts.limit < n:
        counts = count_table(n)
    recomputed = sum(
        (
            _pair(dists, i)[1].total() * appearances_closed_form(i, n, counts)
            for i in range(1, n + 1)
        ),
        Fraction(0),
    )
    if recomputed != total:
        raise InternalConsistencyError(
            f"appearance-weighted total disagrees with distribution total at n={n}"
        )

    inverse_total = sum(
        (m / r for r, m in sd.entries.items()), Fraction(0)
    ) + sum((m / r for r, m in pd.entries.items()), Fraction(0)) - unit
    num = mpz(1)
    den = mpz(1)
    for dist in (sd, pd):
        for r, m in dist.entries.items():
            num *= mpz(r.numerator) ** m
            den *= mpz(r.denominator) ** m
    # The unit key is 1 at n=1, so counting it on both sides does not
    # perturb the product.
    geometric = Fraction(int(num), int(den))

    return SummaryRow(
        n=n,
        count=count,
        series_total=series_total,
        parallel_total=parallel_total,
        total=total,
        mean=total / count,
        series_mean=sd.mean(),
        parallel_mean=pd.mean(),
        harmonic_mean=count / inverse_total,
        geometric_product=geometric,
    )


def geometric_mean_check(n: int, dists: Sequence) -> bool:
    """True iff the product of all resistances is exactly 1 and the
    arithmetic mean is at least 1 (equality only at n = 1)."""
    row = summary(n, dists)
    if row.geometric_product != 1:
        return False
    if n == 1:
        return row.mean == 1
    return row.mean > 1


def mean_k(n: int, k: float, dists: Sequence) -> float:
    """Average generalized resistance over all n-circuits.

    The k-resistance of a circuit is r**(1/k) where r is the ordinary
    resistance of the same tree shape: raising every value to the k-th
    power turns the generalized series/parallel rules into the ordinary
    ones, so the exact distributions transport directly.
    """
    if k == 0:
        raise ValueError("k must be nonzero")
    sd, pd = _pair(dists, n)
    unit = 1 if n == 1 else 0
    inv = 1.0 / k
    acc = -float(unit)
    for dist in (sd, pd):
        for r, m in dist.entries.items():
            acc += m * float(r) ** inv
    count = sd.count() + pd.count() - unit
    return acc / count


@dataclass(frozen=True)
class FloatSummary:
    """Aggregates from the quantized-key DP.

    `count` (circuits of each kind) stays exact; resistance totals carry
    the ~2**-48 relative key quantization plus float64 summation error.
    """

    n: int
    count: int
    series_total: float
    parallel_total: float
    total: float
    mean: float
    distinct_keys: int


class _Accumulator:
    """Buffers (key, value) batches and folds them into one sorted run."""

    def __init__(self):
        self._kbuf: list[np.ndarray] = []
        self._vbuf: list[np.ndarray] = []
        self._pending = 0
        self.keys = np.empty(0, np.int64)
        self.vals = np.empty(0, np.int64)

    def add(self, keys: np.ndarray, vals: np.ndarray) -> None:
        self._kbuf.append(keys)
        self._vbuf.append(vals)
        self._pending += keys.size
        if self._pending >= _BATCH:
            self._flush()

    def _flush(self) -> None:
        if not self._kbuf:
            return
        k = np.concatenate(self._kbuf)
        v = np.concatenate(self._vbuf)
        self._kbuf.clear()
        self._vbuf.clear()
        self._pending = 0
        k, v = _kernels.sort_aggregate(k, v)
        self.keys, self.vals = _kernels.merge_aggregate(self.keys, self.vals, k, v)

    def result(self) -> tuple[np.ndarray, np.ndarray]:
        self._flush()
        return self.keys, self.vals


def _chunked_dot_scaled(keys: np.ndarray, vals: np.ndarray) -> float:
    """sum(keys*vals) / 2**FLOAT_KEY_BITS in float64, chunked to bound RAM."""
    acc = 0.0
    for lo in range(0, keys.size, _BATCH):
        hi = lo + _BATCH
        acc += float(keys[lo:hi].astype(np.float64) @ vals[lo:hi].astype(np.float64))
    return acc / _SCALE


def _reciprocal_keys(keys: np.ndarray) -> np.ndarray:
    """Quantized 1/r for quantized r: round(2**96 / key) fits int64 because
    keys are at least 2**48 / n."""
    return np.rint((float(_SCALE) * _SCALE) / keys.astype(np.float64)).astype(np.int64)


def float_distributions(limit: int, budget: int = FLOAT_BUDGET) -> list[FloatSummary]:
    """Same dynamic program with quantized keys; summaries for n = 1..limit.

    Multiplicities are exact throughout (the per-level division by n is
    checked to be exact); only resistance keys are rounded.  Memory, not
    time, is the binding constraint at n = 21 (about 1.5e9 distinct keys).
    """
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if limit > budget:
        raise BudgetExceededError(
            f"float distributions for n={limit} exceed budget {budget}"
        )
    unit = (np.array([_SCALE], np.int64), np.array([1], np.int64))
    P = {1: unit}
    F = {
        0: (np.array([0], np.int64), np.array([1], np.int64)),
        1: unit,
    }
    rows = [FloatSummary(1, 1, 1.0, 1.0, 1.0, 1.0, 1)]
    for s in range(2, limit + 1):
        acc = _Accumulator()
        for i in range(1, s):
            pk, pc = P[i]
            for j in range(1, s // i + 1):
                fk, fc = F[s - i * j]
                rows_per_piece = max(1, _BATCH // max(1, fk.size))
                for a0 in range(0, pk.size, rows_per_piece):
                    a1 = min(a0 + rows_per_piece, pk.size)
                    if a1 - a0 == 1 and fk.size > _BATCH:
                        for b0 in range(0, fk.size, _BATCH):
                            b1 = b0 + _BATCH
                            acc.add(
                                j * pk[a0] + fk[b0:b1],
                                (i * pc[a0]) * fc[b0:b1],
                            )
                    else:
                        acc.add(
                            (j * pk[a0:a1, None] + fk[None, :]).ravel(),
                            ((i * pc[a0:a1, None]) * fc[None, :]).ravel(),
                        )
        keys, vals = acc.result()
        del acc
        if np.any(vals % s):
            raise InternalConsistencyError(
                f"float distribution recurrence non-integral at n={s}"
            )
        vals //= s
        q_s = int(vals.sum())
        series_total = _chunked_dot_scaled(keys, vals)
        parallel_total = 0.0
        recip = None
        if s < limit:
            recip = _reciprocal_keys(keys)
            parallel_total = _chunked_dot_scaled(recip, vals)
        else:
            for lo in range(0, keys.size, _BATCH):
                hi = lo + _BATCH
                parallel_total += float(
                    _reciprocal_keys(keys[lo:hi]).astype(np.float64)
                    @ vals[lo:hi].astype(np.float64)
                )
            parallel_total /= _SCALE
        rows.append(
            FloatSummary(
                n=s,
                count=2 * q_s,
                series_total=series_total,
                parallel_total=parallel_total,
                total=series_total + parallel_total,
                mean=(series_total + parallel_total) / (2 * q_s),
                distinct_keys=int(keys.size),
            )
        )
        if s < limit:
            order = np.argsort(recip, kind="stable")
            P[s] = _kernels.dedupe_sorted(recip[order], vals[order])
            del recip, order
            F[s] = _kernels.merge_aggregate(keys, vals, *P[s])
        del keys, vals
    return rows
