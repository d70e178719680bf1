"""Verified representations Z = sum_j a(n_j), by two independent routes.

The constructive route follows the additive-basis argument end to end:
shift small targets up with one oversized coefficient, split off remainders
r1 (mod C0 = -a(n_f)) and r0 (mod K), solve the resulting prime-power
equation over candidate primes outside a maximal admissible set, expand each
prime power through the repair identity, absorb the negatively-signed terms
by multiplying their indices by n_f, and pad with a(1) = 1.

The search route is independent of all of that: iterative-deepening
meet-in-the-middle over multisets of table values, used as a desk-scale
witness generator and cross-check.

Every decomposition returned by either route re-verifies exactly before it
leaves this module.
"""

from __future__ import annotations

from bisect import bisect_left, bisect_right
from collections import Counter
from dataclasses import dataclass
from math import comb, factorial, gcd

import numpy as np

from .admissible import AdmissibleSet, RepairWitness, greedy_maximal, repair
from .coefficients import CoeffTable
from .errors import InfeasibleError, TableTooSmallError, VerificationError
from .signs import first_negative, prime_sets
from .waring_goldbach import DEFAULT_NODE_BUDGET, find_solution, hua_constants

ROUTE_CONSTRUCTIVE = "constructive"
ROUTE_SEARCH = "search"

SEARCH_ELL_DEFAULT = 74000  # historical worst-case summand count for the motivating form


@dataclass(frozen=True)
class CfBound:
    """Explicit summand bound C0*(k*s0 + 3) + k*s0 + 1 with C0 = -a(n_f)."""

    C0: int
    k: int
    s0: int
    value: int


@dataclass(frozen=True)
class PrimePowerExpansion:
    """Signed index lists with sum(a(plus)) - sum(a(minus)) = p^(2k-1)."""

    p: int
    plus: tuple[int, ...]
    minus: tuple[int, ...]
    value: int


@dataclass(frozen=True)
class Decomposition:
    """Multiset of coefficient indices representing Z.

    ``terms`` holds (index, multiplicity) pairs sorted by index; ``bound``
    is the declared ceiling for ``ell`` on this route and run.
    """

    Z: int
    terms: tuple[tuple[int, int], ...]
    route: str
    bound: int
    s_used: int | None = None
    shifts: int = 0

    @property
    def ell(self) -> int:
        return sum(m for _, m in self.terms)


@dataclass(frozen=True)
class VerifyReport:
    ok: bool
    delta: int
    ell: int
    bound: int
    max_index: int
    index_ratio: float


def cf_bound(table: CoeffTable) -> CfBound:
    """Summand bound of the form, from n_f and the sufficient summand count."""
    n_f = first_negative(table).n_f
    C0 = -table.a(n_f)
    k = table.k
    s0 = hua_constants(2 * k - 1).s0
    return CfBound(C0, k, s0, C0 * (k * s0 + 3) + k * s0 + 1)


def prime_power_expand(p: int, S: AdmissibleSet, table: CoeffTable) -> PrimePowerExpansion:
    """p^(2k-1) as a signed sum of coefficients at indices p*p_i and p^2.

    Multiplies the repair identity for a(p) by a(p) (multiplicativity applies
    since p is coprime to every witness prime) and subtracts a(p^2) through
    the prime-square identity.  The result re-verifies exactly or raises.
    """
    witness: RepairWitness = repair(p, S, table)
    for q in witness.plus + witness.minus:
        if gcd(p, q) != 1:
            raise VerificationError(f"witness prime {q} is not coprime to {p}")
    plus = tuple(sorted(p * q for q in witness.plus))
    minus = tuple(sorted(p * q for q in witness.minus)) + (p * p,)
    value = p ** (table.weight - 1)
    total = sum(table.value_at(i) for i in plus) - sum(table.value_at(i) for i in minus)
    if total != value:
        raise VerificationError(
            f"prime-power expansion of {p} re-sums to {total}, expected {value}"
        )
    return PrimePowerExpansion(p, plus, minus, value)


def verify_decomposition(d: Decomposition, table: CoeffTable) -> VerifyReport:
    """Exact re-summation, term-count bound, and index-size report.

    ``ok`` requires the sum to match exactly and ell <= bound; the index
    ratio max(n_j) / (|Z|^(2/(2k-1)) + 1) is informational.
    """
    total = 0
    max_index = 0
    for n, mult in d.terms:
        if n < 1 or mult < 1:
            raise ValueError(f"malformed term ({n}, {mult})")
        total += mult * table.value_at(n)
        max_index = max(max_index, n)
    delta = total - d.Z
    denom = float(abs(d.Z)) ** (2.0 / (table.weight - 1)) + 1.0
    ratio = max_index / denom
    ok = delta == 0 and d.ell <= d.bound
    return VerifyReport(ok, delta, d.ell, d.bound, max_index, ratio)


class ConstructivePipeline:
    """Reusable constructive decomposer for one table and parameter set.

    Builds the candidate primes, the maximal admissible set S, and the
    solver pool once; ``decompose`` then handles any number of targets.

    Parameters: M bounds the candidate primes (default: the whole table);
    s is the summand count for the prime-power equation (default: the
    sufficient count s0 for exponent 2k-1; any s >= 2 is allowed and is
    recorded on the output); T is the small-target threshold (default: a
    quarter of the largest positive coefficient); partner_cap prefers pool
    primes whose repair partner is small, keeping decomposition indices
    cheap to factor during verification.
    """

    def __init__(
        self,
        table: CoeffTable,
        M: int | None = None,
        s: int | None = None,
        T: int | None = None,
        partner_cap: int = 10_000,
        node_budget: int = DEFAULT_NODE_BUDGET,
    ):
        self.table = table
        self.k = table.k
        self.e = table.weight - 1
        hua = hua_constants(self.e)
        self.K = hua.K
        self.s0 = hua.s0
        self.s = self.s0 if s is None else s
        if self.s < 2:
            raise ValueError("need s >= 2 summands")
        sign = first_negative(table)
        self.n_f = sign.n_f
        self.C0 = -table.a(self.n_f)
        self.M = table.n_max if M is None else M
        if self.M > table.n_max:
            raise TableTooSmallError(f"M={self.M} exceeds table bound {table.n_max}")
        candidates, _ = prime_sets(table, self.M)
        self.S = greedy_maximal(candidates, self.k, table)
        members = set(self.S.primes)
        self.pool = [p for p in candidates if p not in members]
        if T is None:
            T = table.max_positive() // 4
        self.T = T
        self.node_budget = node_budget
        self.partner_cap = partner_cap
        self._expansions: dict[int, PrimePowerExpansion] = {}
        if self.k == 1:
            first_with_value: dict[int, int] = {}
            for q in self.S.primes:
                first_with_value.setdefault(table.a(q), q)
            self._partner = {p: first_with_value[table.a(p)] for p in self.pool}
        else:
            self._partner = None

    def _pool_with_cap(self, cap: int | None) -> list[int]:
        if cap is None or self._partner is None:
            return self.pool
        return [p for p in self.pool if self._partner[p] <= cap]

    def _shift_index(self, x: int) -> int:
        """Smallest index n with a(n) > x."""
        values, indices = self.table.positive_records()
        j = bisect_right(values, x)
        if j == len(values):
            raise TableTooSmallError(f"no coefficient exceeds {x}; extend the table")
        return indices[j]

    def _expand(self, q: int) -> PrimePowerExpansion:
        exp = self._expansions.get(q)
        if exp is None:
            exp = prime_power_expand(q, self.S, self.table)
            self._expansions[q] = exp
        return exp

    def _expand_target(self, W: int) -> Counter:
        """Index multiplicities realizing C0 * W through prime-power expansions."""
        counts: Counter[int] = Counter()
        if W == 0:
            return counts
        solution = None
        cap = self.partner_cap if self._partner is not None else None
        while True:
            pool = self._pool_with_cap(cap)
            if pool:
                solution = find_solution(
                    abs(W), self.s, self.e, allowed=pool, node_budget=self.node_budget
                )
            if solution is not None:
                break
            if cap is None:
                raise InfeasibleError(
                    f"no {self.s}-term prime-power solution for {abs(W)} over the "
                    "candidate pool; raise M or the node budget"
                )
            cap = None if cap * 8 >= self.M else cap * 8
        negate = W < 0
        for q, mult in sorted(Counter(solution.primes).items()):
            exp = self._expand(q)
            plus, minus = (exp.minus, exp.plus) if negate else (exp.plus, exp.minus)
            for i in plus:
                counts[i] += self.C0 * mult
            for j in minus:
                if gcd(j, self.n_f) != 1:
                    raise VerificationError(f"index {j} shares a factor with n_f={self.n_f}")
                counts[self.n_f * j] += mult
        return counts

    def decompose(self, Z: int) -> Decomposition:
        """Verified constructive decomposition of any integer Z.

        Targets at or below the threshold T are first shifted up by an
        oversized positive coefficient; the same shift retries a failed
        prime-power solve, since growing the working target re-enters the
        range where the candidate pool is dense.
        """
        if Z == 0:
            return Decomposition(0, (), ROUTE_CONSTRUCTIVE, self._run_bound(0), self.s, 0)
        shift_indices: list[int] = []
        cur = Z

        def shift_once(reason: str) -> None:
            if len(shift_indices) >= 64:
                raise InfeasibleError(f"shift limit reached while {reason}")
            nonlocal cur
            try:
                n_prime = self._shift_index(2 * abs(cur))
            except TableTooSmallError:
                raise InfeasibleError(
                    f"stuck {reason}: no coefficient exceeds {2 * abs(cur)}; "
                    "raise M, T, or the table size"
                ) from None
            shift_indices.append(n_prime)
            cur -= self.table.a(n_prime)

        while abs(cur) <= self.T:
            shift_once("escaping the small-target threshold")
        while True:
            r1 = cur % self.C0
            Z0 = (cur - r1) // self.C0
            r0 = (Z0 - self.s) % self.K
            W = Z0 - r0
            try:
                counts = self._expand_target(W)
                break
            except InfeasibleError:
                shift_once(f"retrying the prime-power solve past W={W}")
        pad = self.C0 * r0 + r1
        if pad:
            counts[1] += pad
        for n_prime in shift_indices:
            counts[n_prime] += 1
        d = Decomposition(
            Z,
            tuple(sorted(counts.items())),
            ROUTE_CONSTRUCTIVE,
            self._run_bound(len(shift_indices)),
            self.s,
            len(shift_indices),
        )
        report = verify_decomposition(d, self.table)
        if report.delta != 0:
            raise VerificationError(f"constructive route re-sums off by {report.delta}")
        return d

    def _run_bound(self, shifts: int) -> int:
        # equals the closed-form summand bound when s = s0 and shifts <= 1
        return (self.C0 + 1) * self.k * self.s + 3 * self.C0 + 1 + max(0, shifts - 1)


def decompose_constructive(
    table: CoeffTable,
    Z: int,
    M: int | None = None,
    s: int | None = None,
    T: int | None = None,
) -> Decomposition:
    """One-shot constructive decomposition (build a ConstructivePipeline to reuse setup)."""
    return ConstructivePipeline(table, M=M, s=s, T=T).decompose(Z)


def _multiset_sums(vals: np.ndarray, h: int) -> np.ndarray:
    """Sums over non-decreasing index h-tuples of vals (C(len+h-1, h) entries)."""
    if h == 1:
        return vals
    parts = [vals[i] + _multiset_sums(vals[i:], h - 1) for i in range(len(vals))]
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


class SearchDecomposer:
    """Iterative-deepening meet-in-the-middle over multisets of coefficient values.

    Half-sum tables are built once per half-depth over an index pool sized to
    the half-sum budget (and to int64 headroom) and cached, so one instance
    amortizes across many targets.  Ties break to the lexicographically
    smallest index list among the located candidates; a miss within the depth
    ceiling falls back to the exact a(1) / a(n_f) padding construction, and
    only budget exhaustion yields None (never a claim of impossibility).
    """

    MAX_MEET_DEPTH = 8

    def __init__(
        self,
        table: CoeffTable,
        n_max: int | None = None,
        half_sum_budget: int = 6_000_000,
        candidate_cap: int = 16,
        band_limit: int = 128,
    ):
        self.table = table
        self.n_max = table.n_max if n_max is None else min(n_max, table.n_max)
        self.budget = half_sum_budget
        self.candidate_cap = candidate_cap
        self.band_limit = band_limit
        self.values = [table.a(n) for n in range(1, self.n_max + 1)]
        self._value_first_index: dict[int, int] = {}
        self._value_indices: dict[int, list[int]] = {}
        for i, v in enumerate(self.values, start=1):
            self._value_first_index.setdefault(v, i)
            self._value_indices.setdefault(v, []).append(i)
        self._prefix_abs_max: list[int] = []
        best = 0
        for v in self.values:
            best = max(best, abs(v))
            self._prefix_abs_max.append(best)
        self._tables: dict[int, tuple[np.ndarray, int]] = {}
        self._band_cache: dict[tuple[int, int], dict[int, list[tuple[int, int]]]] = {}

    def _pool_size(self, h: int) -> int:
        K = min(self.n_max, int((self.budget * factorial(h)) ** (1.0 / h)) + 2)
        while K > 1 and comb(K + h - 1, h) > self.budget:
            K -= 1
        limit = (1 << 61) // h
        while K > 1 and self._prefix_abs_max[K - 1] > limit:
            K -= 1
        return K

    def _half_table(self, h: int) -> tuple[np.ndarray, int]:
        cached = self._tables.get(h)
        if cached is None:
            K = self._pool_size(h)
            vals = np.array(self.values[:K], dtype=np.int64)
            sums = np.sort(_multiset_sums(vals, h)) if K else np.zeros(0, dtype=np.int64)
            cached = (sums, K)
            self._tables[h] = cached
        return cached

    def _find_multiset(self, target: int, h: int, K: int, start: int = 1) -> tuple[int, ...] | None:
        """Lexicographically smallest non-decreasing index tuple summing to target."""
        if h == 0:
            return () if target == 0 else None
        if K < start or abs(target) > h * self._prefix_abs_max[K - 1]:
            return None
        if h == 1:
            idxs = self._value_indices.get(target)
            if not idxs:
                return None
            j = bisect_left(idxs, start)
            if j < len(idxs) and idxs[j] <= K:
                return (idxs[j],)
            return None
        for i in range(start, K + 1):
            rest = self._find_multiset(target - self.values[i - 1], h - 1, K, i)
            if rest is not None:
                return (i,) + rest
        return None

    def _meet(self, Z: int, h1: int, h2: int) -> list[tuple[int, int]]:
        """Candidate (s1, s2) half-sum splits with s1 + s2 = Z, capped and ordered."""
        sums2, _ = self._half_table(h2)
        if not len(sums2):
            return []
        lo, hi = int(sums2[0]), int(sums2[-1])
        out: list[tuple[int, int]] = []
        if h1 == 1:
            pairs = []
            for v in self.values:
                c = Z - v
                if lo <= c <= hi:
                    pairs.append((v, c))
            if not pairs:
                return []
            carr = np.array([c for _, c in pairs], dtype=np.int64)
            pos = np.searchsorted(sums2, carr)
            ok = (pos < len(sums2)) & (sums2[np.minimum(pos, len(sums2) - 1)] == carr)
            for j in np.flatnonzero(ok)[: self.candidate_cap]:
                out.append(pairs[int(j)])
            return out
        if abs(Z) <= self.band_limit:
            return self._band_pairs(h1, h2).get(Z, [])
        sums1, _ = self._half_table(h1)
        if not len(sums1) or abs(Z) >= 1 << 61:
            return []
        comps = Z - sums1
        inside = (comps >= lo) & (comps <= hi)
        if not inside.any():
            return []
        cin = comps[inside]
        pos = np.searchsorted(sums2, cin)
        ok = (pos < len(sums2)) & (sums2[np.minimum(pos, len(sums2) - 1)] == cin)
        for j in np.flatnonzero(ok)[: self.candidate_cap]:
            out.append((Z - int(cin[j]), int(cin[j])))
        return out

    def _band_pairs(self, h1: int, h2: int) -> dict[int, list[tuple[int, int]]]:
        """All (s1, s2) splits with |s1 + s2| <= band_limit, grouped by total.

        Built once per half-depth combination with two vectorized range
        queries per chunk; amortizes meets over many small targets.
        """
        cached = self._band_cache.get((h1, h2))
        if cached is not None:
            return cached
        sums1, _ = self._half_table(h1)
        sums2, _ = self._half_table(h2)
        band = self.band_limit
        table: dict[int, list[tuple[int, int]]] = {}
        chunk = 2_000_000
        for st in range(0, len(sums1), chunk):
            a = sums1[st:st + chunk]
            lo = np.searchsorted(sums2, -band - a, side="left")
            hi = np.searchsorted(sums2, band - a, side="right")
            for j in np.flatnonzero(hi > lo):
                s1 = int(a[j])
                for u in sums2[lo[j]:hi[j]]:
                    s2 = int(u)
                    bucket = table.setdefault(s1 + s2, [])
                    if len(bucket) < self.candidate_cap:
                        bucket.append((s1, s2))
        self._band_cache[(h1, h2)] = table
        return table

    def _baseline(self, Z: int, ell_max: int) -> Decomposition | None:
        """Exact fallback from a(1) = 1 and the first negative coefficient."""
        n_f = first_negative(self.table).n_f
        if n_f > self.n_max:
            return None
        c0 = -self.table.a(n_f)
        x = 0 if Z >= 0 else (-Z + c0 - 1) // c0  # ceil(-Z / c0)
        y = Z + x * c0
        if x + y > ell_max:
            return None
        terms = []
        if y:
            terms.append((1, y))
        if x:
            terms.append((n_f, x))
        return Decomposition(Z, tuple(sorted(terms)), ROUTE_SEARCH, ell_max)

    def decompose(self, Z: int, ell_max: int = SEARCH_ELL_DEFAULT) -> Decomposition | None:
        """Shortest-found multiset representation with at most ell_max terms."""
        if Z == 0:
            return Decomposition(0, (), ROUTE_SEARCH, ell_max)
        if ell_max >= 1:
            i = self._value_first_index.get(Z)
            if i is not None:
                return Decomposition(Z, ((i, 1),), ROUTE_SEARCH, ell_max)
        for ell in range(2, min(ell_max, self.MAX_MEET_DEPTH) + 1):
            h1, h2 = ell // 2, ell - ell // 2
            best: tuple[int, ...] | None = None
            k1 = self.n_max if h1 == 1 else self._half_table(h1)[1]
            k2 = self.n_max if h2 == 1 else self._half_table(h2)[1]
            for s1, s2 in self._meet(Z, h1, h2):
                m1 = self._find_multiset(s1, h1, k1)
                m2 = self._find_multiset(s2, h2, k2)
                if m1 is None or m2 is None:
                    continue
                combined = tuple(sorted(m1 + m2))
                if best is None or combined < best:
                    best = combined
            if best is not None:
                terms = tuple(sorted(Counter(best).items()))
                d = Decomposition(Z, terms, ROUTE_SEARCH, ell_max)
                report = verify_decomposition(d, self.table)
                if report.delta != 0:
                    raise VerificationError(f"search route re-sums off by {report.delta}")
                return d
        return self._baseline(Z, ell_max)


def decompose_search(
    table: CoeffTable,
    Z: int,
    n_max: int | None = None,
    ell_max: int = SEARCH_ELL_DEFAULT,
) -> Decomposition | None:
    """One-shot search decomposition (instantiate SearchDecomposer for batches)."""
    return SearchDecomposer(table, n_max=n_max).decompose(Z, ell_max)
