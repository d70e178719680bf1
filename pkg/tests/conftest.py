"""Shared fixtures and independent oracles for the test suite.

The oracles here deliberately avoid the library's algorithms: the eta
expansion below multiplies one (1 - q^j) factor at a time by direct
convolution, and the representation counter enumerates ordered tuples with
nested loops.  Expensive coefficient tables are session fixtures.
"""

from __future__ import annotations

import pytest

from newform_basis import DELTA, FORM_11A, ConstructivePipeline, SearchDecomposer, expand_eta_product

ETA_FACTOR_SPECS = {
    "delta": ((1, 24),),
    "11a": ((1, 2), (11, 2)),
}


def naive_eta_coefficients(specs, n_max: int) -> list[int]:
    """a(1..n_max) of q * prod (1 - q^(scale*n))^power by factor-at-a-time convolution."""
    deg = n_max - 1
    series = [0] * (deg + 1)
    series[0] = 1
    for scale, power in specs:
        for j in range(1, deg // scale + 1):
            step = scale * j
            for _ in range(power):
                for i in range(deg, step - 1, -1):
                    series[i] -= series[i - step]
    return series


def naive_ordered_counts(z_max: int, s: int, e: int, primes: list[int]) -> list[int]:
    """counts[z] = ordered s-tuples of primes with sum of e-th powers z, for z <= z_max."""
    powers = [p**e for p in primes if p**e <= z_max]
    counts = [0] * (z_max + 1)
    counts[0] = 1
    for _ in range(s):
        nxt = [0] * (z_max + 1)
        for w in powers:
            for v in range(w, z_max + 1):
                if counts[v - w]:
                    nxt[v] += counts[v - w]
        counts = nxt
    return counts


def brute_force_ordered_count(Z: int, s: int, e: int, primes: list[int]) -> int:
    """Literal nested enumeration over ordered tuples (s <= 3)."""
    powers = [p**e for p in primes if p**e <= Z]
    if s == 1:
        return sum(1 for w in powers if w == Z)
    if s == 2:
        return sum(1 for w1 in powers for w2 in powers if w1 + w2 == Z)
    if s == 3:
        total = 0
        for w1 in powers:
            for w2 in powers:
                rest = Z - w1 - w2
                if rest >= 2:
                    total += sum(1 for w3 in powers if w3 == rest)
        return total
    raise ValueError("oracle supports s <= 3")


@pytest.fixture(scope="session")
def delta_1k():
    return expand_eta_product(DELTA, 1000)


@pytest.fixture(scope="session")
def f11a_1k():
    return expand_eta_product(FORM_11A, 1000)


@pytest.fixture(scope="session")
def delta_100k():
    return expand_eta_product(DELTA, 10**5)


@pytest.fixture(scope="session")
def delta_1m():
    # covers a(p^2) for every prime p <= 10^3
    return expand_eta_product(DELTA, 10**6)


@pytest.fixture(scope="session")
def f11a_big():
    return expand_eta_product(FORM_11A, 2_750_000)


@pytest.fixture(scope="session")
def pipeline_11a(f11a_big):
    return ConstructivePipeline(f11a_big)


@pytest.fixture(scope="session")
def delta_searcher(delta_1k):
    return SearchDecomposer(delta_1k)
