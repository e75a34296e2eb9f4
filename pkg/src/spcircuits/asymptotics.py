"""Growth constant and limit behavior of the circuit counts.

The counting sequence satisfies total(n) ~ c * d**n * n**(-3/2) with
d = 3.5608393095389433...; 1/d is the radius of convergence of the
ordinary generating function

    Q(x) = sum_n total(n) x^n
         = exp( sum_{m>=1} (Q(x^m) + x^m - 1) / (2m) )          (exp form)
         = prod_{n>=1} (1 - x^n)^(-series_count(n))             (product form)

This module verifies both identities exactly on truncated series, extracts
d by two independent routes (a root of the functional equation and ratio
extrapolation of the exact counts), and evaluates the appearance-ratio
limit and the mean-resistance upper bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np
from mpmath import mp, mpf

from .counting import CountTable, appearances_closed_form, count_table
from .errors import BracketingError
from .numerics import DEFAULT_PRECISION_BITS, PowerSeries, euler_product

#: Bisection bracket for 1/d: the radius is about 0.2808, safely below 1/3.
_BRACKET_LO = 1e-3
_BRACKET_HI = 1.0 / 3.0


@dataclass(frozen=True)
class AsymptoticFit:
    """An estimate of the growth law total(n) ~ c * d**n * n**(-3/2).

    `residual` is the method's own convergence diagnostic (never hidden):
    the change of d under doubling the truncation order for the root
    method, or under one Richardson step for extrapolation.  `plain_ratio`
    is the raw total(N)/total(N-1), reported because coarse published
    estimates quote it directly.
    """

    d: mpf
    c: mpf | None
    N: int
    method: str
    residual: mpf | None
    plain_ratio: mpf | None = None


def verify_gf_identities(N: int, counts: CountTable) -> bool:
    """Check both generating-function forms coefficient-by-coefficient.

    True iff the exp form and the product form each reproduce the exact
    counts total(0)..total(N).
    """
    if counts.limit < N:
        raise ValueError(f"counts filled to {counts.limit}, need {N}")
    target = PowerSeries(counts.totals[: N + 1])

    acc = PowerSeries.zero(N)
    for m in range(1, N + 1):
        inner = target.compose_power(m)  # Q(x^m)
        coeffs = list(inner.coefficients)
        coeffs[0] -= 1  # Q(x^m) - 1
        coeffs[m] += 1  # + x^m
        acc = acc + PowerSeries(coeffs).scale(Fraction(1, 2 * m))
    if acc.exp() != target:
        return False

    product = euler_product(
        [counts.series_count(n) for n in range(1, N + 1)], order=N
    )
    return product == target


def _truncated_eval(coeffs: list[mpf], x: mpf, eps: mpf) -> mpf:
    """Forward evaluation of the truncated counting series at 0 < x << 1/d,
    stopping once terms drop below eps (terms decay geometrically there)."""
    acc = mpf(0)
    xn = mpf(1)
    for c in coeffs:
        term = c * xn
        acc += term
        if term and term < eps and xn < 1:
            break
        xn *= x
    return acc


def _root_of_functional_equation(coeffs: list[mpf], iterations: int) -> mpf:
    """Bisect g(x) = 0 on (lo, hi) where, at the point with Q(x) = 2,

        g(x) = (1 + x)/2 + sum_{m>=2} (Q(x^m) + x^m - 1)/(2m) - ln 2.

    This is the exp-form identity with Q(x) replaced by its known value 2
    at the target point, so the truncated series is only ever evaluated at
    x^m <= x^2 — deep inside the disk of convergence — and the truncation
    error decays geometrically in the order instead of O(1/order)."""
    ln2 = mp.log(2)
    eps = mpf(2) ** (-(mp.prec - 6))

    def g(x: mpf) -> mpf:
        tot = (1 + x) / 2 - ln2
        m = 2
        while True:
            xm = x**m
            term = (_truncated_eval(coeffs, xm, eps) + xm - 1) / (2 * m)
            tot += term
            if abs(term) < eps:
                return tot
            m += 1

    lo, hi = mpf(_BRACKET_LO), mpf(_BRACKET_HI)
    if not (g(lo) < 0 < g(hi)):
        raise BracketingError("functional-equation values do not straddle zero")
    for _ in range(iterations):
        mid = (lo + hi) / 2
        if g(mid) < 0:
            lo = mid
        else:
            hi = mid
    return 1 / ((lo + hi) / 2)


def estimate_d_root(
    N: int, precision: int = DEFAULT_PRECISION_BITS, counts: CountTable | None = None
) -> AsymptoticFit:
    """Growth base from the generating function truncated at order N.

    The reciprocal 1/d is the point where the series reaches the value 2;
    it is located by bisecting the functional-equation form above, which
    converges geometrically in N (direct bisection of the raw truncated
    series stalls at O(1/N) accuracy).  The residual compares against the
    half-order estimate.
    """
    if N < 100:
        raise ValueError("root method needs truncation order >= 100")
    if counts is None or counts.limit < N:
        counts = count_table(N)
    with mp.workprec(precision):
        coeffs = [mpf(t) for t in counts.totals[: N + 1]]
        iterations = min(precision - 10, 200)
        d = _root_of_functional_equation(coeffs, iterations)
        d_half = _root_of_functional_equation(coeffs[: N // 2 + 1], iterations)
        return AsymptoticFit(
            d=d, c=None, N=N, method="root", residual=abs(d - d_half)
        )


def estimate_d_extrapolate(N: int, counts: CountTable) -> AsymptoticFit:
    """Growth base from ratios of exact counts.

    The factored ratio total(n)/total(n-1) * (n/(n-1))**(3/2) removes the
    polynomial part of the growth law; one Richardson step against the
    half-order value removes the leading 1/n correction.  The prefactor c
    is fitted at the tail with the refined d.
    """
    if counts.limit < N or N < 4:
        raise ValueError("need counts to N >= 4")

    def factored(n: int) -> mpf:
        return (
            mpf(counts.total(n))
            / counts.total(n - 1)
            * (mpf(n) / (n - 1)) ** mpf("1.5")
        )

    with mp.workprec(DEFAULT_PRECISION_BITS):
        d_full = factored(N)
        d_half = factored(N // 2)
        # leading correction is O(1/n^2): Richardson weights 4/3, -1/3
        d = (4 * d_full - d_half) / 3
        plain = mpf(counts.total(N)) / counts.total(N - 1)
        c = mpf(counts.total(N)) * mpf(N) ** mpf("1.5") / d**N
        return AsymptoticFit(
            d=d,
            c=c,
            N=N,
            method="extrapolation",
            residual=abs(d - d_full),
            plain_ratio=plain,
        )


def prefactor_tail(N: int, counts: CountTable, d: mpf, samples: int = 10) -> list[mpf]:
    """c = total(n) * n**(3/2) / d**n sampled over the last 10% of terms."""
    with mp.workprec(DEFAULT_PRECISION_BITS):
        lo = max(1, N - N // 10)
        step = max(1, (N - lo) // max(1, samples - 1))
        return [
            mpf(counts.total(n)) * mpf(n) ** mpf("1.5") / mpf(d) ** n
            for n in range(lo, N + 1, step)
        ]


def ci_qn_limit_check(i: int, n: int, counts: CountTable, d) -> float:
    """Relative deviation of appearances(i, n)/total(n) from 1/(d^i - 1)."""
    with mp.workprec(DEFAULT_PRECISION_BITS):
        ratio = mpf(appearances_closed_form(i, n, counts)) / counts.total(n)
        limit = 1 / (mpf(d) ** i - 1)
        return float(abs(ratio - limit) / limit)


def upper_bound(n: int, counts: CountTable) -> mpf:
    """(5/2) * sum_i series_count(i) * appearances(i, n) / total(n).

    The numerator sum is exact; a single high-precision division at the
    end.  Bounds the mean resistance of all n-circuits from above.
    """
    numerator = 0
    for i in range(1, n + 1):
        numerator += counts.series_count(i) * appearances_closed_form(i, n, counts)
    with mp.workprec(DEFAULT_PRECISION_BITS):
        return mpf(5) / 2 * mpf(numerator) / counts.total(n)


def zeta_three_halves_partial(n: int) -> mpf:
    """Partial sum of i**(-3/2) for i = 1..n (tends to zeta(3/2) = 2.6124...).

    Evaluated in float64 chunks; absolute error is far below the O(2/sqrt(n))
    distance to the limit that makes the value interesting.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    acc = 0.0
    chunk = 1 << 22
    for lo in range(1, n + 1, chunk):
        hi = min(lo + chunk, n + 1)
        block = np.arange(lo, hi, dtype=np.float64)
        acc += float(np.sum(block ** -1.5))
    return mpf(acc)
