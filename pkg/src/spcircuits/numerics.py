"""Exact-arithmetic and high-precision substrate.

Rationals are plain ``fractions.Fraction`` values (always reduced, positive
denominator).  Truncated formal power series carry exact rational
coefficients.  High-precision floats are mpmath values with an explicit
bit precision.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from mpmath import mp, mpf

from .errors import BracketingError

DEFAULT_PRECISION_BITS = 256

ZERO = Fraction(0)
ONE = Fraction(1)


def binomial(n: int, k: int) -> int:
    """n choose k as an exact integer; 0 when k > n."""
    return math.comb(n, k)


class PowerSeries:
    """Formal power series truncated at a fixed order.

    Coefficient ``k`` of any product depends only on coefficients ``0..k``
    of the operands, so mixed-order arithmetic truncates to the smaller
    order instead of pretending to know higher coefficients.
    """

    __slots__ = ("coefficients",)

    def __init__(self, coefficients: Iterable[Fraction | int]):
        coeffs = tuple(Fraction(c) for c in coefficients)
        if not coeffs:
            raise ValueError("a power series needs at least the constant term")
        self.coefficients = coeffs

    @classmethod
    def zero(cls, order: int) -> "PowerSeries":
        return cls([ZERO] * (order + 1))

    @classmethod
    def one(cls, order: int) -> "PowerSeries":
        return cls([ONE] + [ZERO] * order)

    @classmethod
    def identity(cls, order: int) -> "PowerSeries":
        """The series x, truncated at `order`."""
        coeffs = [ZERO] * (order + 1)
        if order >= 1:
            coeffs[1] = ONE
        return cls(coeffs)

    @property
    def order(self) -> int:
        return len(self.coefficients) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coefficients[k]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PowerSeries):
            return NotImplemented
        return self.coefficients == other.coefficients

    def __hash__(self) -> int:
        return hash(self.coefficients)

    def __repr__(self) -> str:
        return f"PowerSeries({list(self.coefficients)!r})"

    def truncate(self, order: int) -> "PowerSeries":
        if order >= self.order:
            return self
        return PowerSeries(self.coefficients[: order + 1])

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(
            [self.coefficients[k] + other.coefficients[k] for k in range(n + 1)]
        )

    def __sub__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        return PowerSeries(
            [self.coefficients[k] - other.coefficients[k] for k in range(n + 1)]
        )

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        n = min(self.order, other.order)
        a, b = self.coefficients, other.coefficients
        out = [ZERO] * (n + 1)
        for i in range(min(len(a), n + 1)):
            ai = a[i]
            if not ai:
                continue
            for j in range(min(len(b), n + 1 - i)):
                if b[j]:
                    out[i + j] += ai * b[j]
        return PowerSeries(out)

    def scale(self, factor: Fraction | int) -> "PowerSeries":
        f = Fraction(factor)
        return PowerSeries([c * f for c in self.coefficients])

    def compose_power(self, j: int) -> "PowerSeries":
        """Substitute x -> x**j, truncated at the original order."""
        if j < 1:
            raise ValueError("substitution power must be >= 1")
        out = [ZERO] * (self.order + 1)
        for k, c in enumerate(self.coefficients):
            if k * j > self.order:
                break
            out[k * j] = c
        return PowerSeries(out)

    def exp(self) -> "PowerSeries":
        """exp of a series with zero constant term.

        Uses the recurrence n*f_n = sum_{k=1..n} k*s_k*f_{n-k}, exact in
        rational arithmetic.
        """
        if self.coefficients[0] != 0:
            raise ValueError("series exp requires a zero constant term")
        n = self.order
        s = self.coefficients
        f = [ONE] + [ZERO] * n
        for m in range(1, n + 1):
            acc = ZERO
            for k in range(1, m + 1):
                if s[k]:
                    acc += k * s[k] * f[m - k]
            f[m] = acc / m
        return PowerSeries(f)

    def log(self) -> "PowerSeries":
        """log of a series with constant term 1; inverse of :meth:`exp`."""
        if self.coefficients[0] != 1:
            raise ValueError("series log requires constant term 1")
        n = self.order
        s = self.coefficients
        l = [ZERO] * (n + 1)
        for m in range(1, n + 1):
            acc = m * s[m]
            for k in range(1, m):
                if l[k] and s[m - k]:
                    acc -= k * l[k] * s[m - k]
            l[m] = acc / m
        return PowerSeries(l)


def series_exp(s: PowerSeries) -> PowerSeries:
    return s.exp()


def series_log(s: PowerSeries) -> PowerSeries:
    return s.log()


def euler_product(exponents: Sequence[int], order: int | None = None) -> PowerSeries:
    """prod_{n=1..N} (1 - x^n)^(-e_n) truncated at `order` (default N).

    `exponents` is indexed from 1, i.e. exponents[0] is the exponent of the
    (1 - x) factor.  Each factor expands with nonnegative integer
    coefficients binomial(e + m - 1, m) at x^(n*m).
    """
    n_factors = len(exponents)
    if order is None:
        order = n_factors
    coeffs = [ONE] + [ZERO] * order
    for n, e in enumerate(exponents, start=1):
        if e == 0 or n > order:
            continue
        # multiply in place by (1 - x^n)^(-e)
        new = list(coeffs)
        for m in range(1, order // n + 1):
            w = binomial(e + m - 1, m)
            shift = n * m
            for k in range(order - shift + 1):
                if coeffs[k]:
                    new[k + shift] += w * coeffs[k]
        coeffs = new
    return PowerSeries(coeffs)


def bisect_root(
    f: Callable[[mpf], mpf],
    lo,
    hi,
    target,
    tol,
    precision: int = DEFAULT_PRECISION_BITS,
) -> mpf:
    """Locate x in [lo, hi] with f(x) = target by bisection.

    `f` must be monotone on the interval and the endpoint values must
    straddle `target`.  `tol` bounds the width of the final bracket in
    argument space; the midpoint of that bracket is returned.
    """
    with mp.workprec(precision):
        lo, hi, target, tol = mpf(lo), mpf(hi), mpf(target), mpf(tol)
        flo = f(lo) - target
        fhi = f(hi) - target
        if flo == 0:
            return lo
        if fhi == 0:
            return hi
        if (flo > 0) == (fhi > 0):
            raise BracketingError(
                f"f({lo}) and f({hi}) do not straddle target {target}"
            )
        increasing = fhi > 0
        while hi - lo > tol:
            mid = (lo + hi) / 2
            if mid <= lo or mid >= hi:  # precision exhausted
                break
            fm = f(mid) - target
            if fm == 0:
                return mid
            if (fm > 0) == increasing:
                hi = mid
            else:
                lo = mid
        return (lo + hi) / 2
