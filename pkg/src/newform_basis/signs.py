"""First negative coefficient and large-coefficient prime density.

All scans are read-only passes over an immutable coefficient table and use
integer comparisons only (the size test |a(p)| > p^((2k-1)/2) is evaluated
as a(p)^2 > p^(2k-1)).
"""

from __future__ import annotations

from bisect import bisect_right
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Callable

from .coefficients import CoeffTable
from .errors import NotFoundError, TableTooSmallError


@dataclass(frozen=True)
class SignReport:
    """Location of the first negative coefficient coprime to the level."""

    n_f: int
    bound_value: float  # (4 k^2 N)^(3/8)
    ratio: float

    def lines(self) -> list[str]:
        return [
            f"n_f={self.n_f}",
            f"bound_value={self.bound_value!r}",
            f"ratio={self.ratio!r}",
        ]


@dataclass(frozen=True)
class DensityReport:
    """Exact count of primes p <= T with a(p)^2 > p^(2k-1), p coprime to the level."""

    T: int
    count_large: int
    count_all: int

    @property
    def undefined(self) -> bool:
        return self.count_all == 0

    @property
    def alpha_hat(self) -> Fraction:
        if self.undefined:
            return Fraction(0, 1)
        return Fraction(self.count_large, self.count_all)

    def lines(self) -> list[str]:
        return [
            f"T={self.T}",
            f"count_large={self.count_large}",
            f"count_all={self.count_all}",
            f"alpha_hat={self.count_large}/{self.count_all}" + (" (undefined)" if self.undefined else ""),
        ]


def first_negative(table: CoeffTable) -> SignReport:
    """Smallest n with a(n) < 0 and gcd(n, level) = 1, plus the size-bound ratio.

    Extending the table never changes an already-found index, so the result
    is stable under truncation/extension.
    """
    level = table.level
    for n in range(1, table.n_max + 1):
        if gcd(n, level) == 1 and table.a(n) < 0:
            bound = float((4 * table.k**2 * level) ** 0.375)
            return SignReport(n, bound, n / bound)
    raise NotFoundError(
        f"no negative coefficient coprime to level {level} for n <= {table.n_max}; "
        "extend the table"
    )


def large_coeff_density(table: CoeffTable, T: int) -> DensityReport:
    """Empirical density of primes with a(p)^2 > p^(2k-1) among p <= T."""
    if T > table.n_max:
        raise TableTooSmallError(f"T={T} exceeds table bound {table.n_max}")
    level = table.level
    exp = table.weight - 1
    count_all = 0
    count_large = 0
    for p in table.primes():
        if p > T:
            break
        if level % p == 0:
            continue
        count_all += 1
        if table.a(p) ** 2 > p**exp:
            count_large += 1
    return DensityReport(T, count_large, count_all)


def prime_sets(table: CoeffTable, M: int) -> tuple[list[int], Callable[[int], bool]]:
    """Candidate primes in (n_f, M] coprime to the level, and the large-coefficient test.

    Returns (sorted prime list, predicate); the predicate reports whether
    a(p)^2 > p^(2k-1) and requires p <= n_max.
    """
    if M > table.n_max:
        raise TableTooSmallError(f"M={M} exceeds table bound {table.n_max}")
    n_f = first_negative(table).n_f
    level = table.level
    ps = table.primes()
    lo = bisect_right(ps, n_f)
    hi = bisect_right(ps, M, lo=lo)
    candidates = [p for p in ps[lo:hi] if level % p]
    exp = table.weight - 1

    def has_large_coeff(p: int) -> bool:
        return table.a(p) ** 2 > p**exp

    return candidates, has_large_coeff
