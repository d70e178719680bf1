"""Prime sieves and small number-theoretic helpers.

Everything here is exact integer arithmetic; numpy is used only for sieve
bitmaps and smallest-prime-factor tables, never for values that could
overflow int64.
"""

from __future__ import annotations

from math import isqrt

import numpy as np

# Witnesses proving primality for every n < 3.317e24 (Sorenson-Webster).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_MR_LIMIT = 3_317_044_064_679_887_385_961_981


def sieve_bitmap(limit: int) -> np.ndarray:
    """Boolean array b of length limit+1 with b[n] true iff n is prime."""
    if limit < 1:
        return np.zeros(max(limit + 1, 1), dtype=bool)
    b = np.ones(limit + 1, dtype=bool)
    b[:2] = False
    for p in range(2, isqrt(limit) + 1):
        if b[p]:
            b[p * p:: p] = False
    return b


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, ascending."""
    return [int(p) for p in np.flatnonzero(sieve_bitmap(limit))]


def smallest_prime_factors(limit: int) -> np.ndarray:
    """Array s with s[n] = smallest prime factor of n (s[0] = s[1] = 0)."""
    s = np.zeros(limit + 1, dtype=np.int64)
    if limit >= 2:
        sl = s[2:]
        sl[::2] = 2  # even slots; odd primes fill the rest below
        for p in range(3, isqrt(limit) + 1, 2):
            if s[p] == 0:
                sel = s[p * p:: p]
                sel[sel == 0] = p
        rest = s[2:]
        unmarked = np.flatnonzero(rest == 0) + 2
        rest[unmarked - 2] = unmarked  # remaining slots are prime
    return s


def divisor_counts(limit: int) -> np.ndarray:
    """Array d with d[n] = number of divisors of n (d[0] = 0)."""
    d = np.zeros(limit + 1, dtype=np.int64)
    for i in range(1, limit + 1):
        d[i::i] += 1
    return d


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for n below ~3.3e24."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n >= _MR_LIMIT:
        raise ValueError(f"primality test limit exceeded: {n}")
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def integer_nth_root(x: int, n: int) -> int:
    """floor(x**(1/n)) for x >= 0, n >= 1, exact."""
    if x < 0 or n < 1:
        raise ValueError("integer_nth_root needs x >= 0, n >= 1")
    if x < 2 or n == 1:
        return x
    if n == 2:
        return isqrt(x)
    r = int(round(x ** (1.0 / n)))
    while r > 0 and r**n > x:
        r -= 1
    while (r + 1) ** n <= x:
        r += 1
    return r


def next_prime_below(limit: int) -> int:
    """Largest prime strictly below limit."""
    for n in range(limit - 1, 1, -1):
        if is_prime(n):
            return n
    raise ValueError("no prime below limit")
