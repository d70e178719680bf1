import random

import pytest

from newform_basis import (
    InfeasibleError,
    MemoryGuardError,
    cardinality_report,
    dyadic_construction,
    greedy_maximal,
    is_admissible,
    prime_sets,
    repair,
)


class TestIsAdmissible:
    def test_distinct_singletons(self, delta_1k):
        assert is_admissible([3, 7], 1, delta_1k).ok

    def test_equal_values_collide(self, f11a_1k):
        # a(19) = a(29) = 0
        check = is_admissible([19, 29], 1, f11a_1k)
        assert not check.ok
        assert set(check.counterexample) == {(19,), (29,)}

    def test_pairs_on_delta(self, delta_1k):
        assert is_admissible([3, 5, 7, 13], 2, delta_1k, method="brute-force").ok
        assert is_admissible([3, 5, 7, 13], 2, delta_1k).ok

    def test_too_few_primes(self, delta_1k):
        with pytest.raises(ValueError):
            is_admissible([3], 2, delta_1k)

    def test_duplicates_rejected(self, delta_1k):
        with pytest.raises(ValueError):
            is_admissible([3, 3, 5], 1, delta_1k)

    def test_memory_guard(self, delta_1k):
        with pytest.raises(MemoryGuardError):
            is_admissible(list(delta_1k.primes()[:40]), 3, delta_1k, max_sums=100)

    def test_hash_equals_brute_force(self, delta_1k, f11a_1k):
        rng = random.Random(8)
        for table in (delta_1k, f11a_1k):
            candidates, _ = prime_sets(table, 1000)
            for _ in range(40):
                k = rng.randint(1, 3)
                size = rng.randint(max(k, 2), 10)
                primes = rng.sample(candidates, size)
                a = is_admissible(primes, k, table)
                b = is_admissible(primes, k, table, method="brute-force")
                assert a.ok == b.ok


class TestGreedyMaximal:
    def test_inclusion_maximal_11a(self, f11a_1k):
        candidates, _ = prime_sets(f11a_1k, 1000)
        S = greedy_maximal(candidates, 1, f11a_1k)
        members = set(S.primes)
        assert is_admissible(S.primes, 1, f11a_1k).ok
        assert len(S) >= 2
        assert S.check_bound == candidates[-1]
        for p in candidates:
            if p not in members:
                assert not is_admissible(sorted(members | {p}), 1, f11a_1k).ok

    def test_single_admissible_pair(self, f11a_1k):
        # candidates that already form the only admissible 2-set
        S = greedy_maximal([3, 5], 1, f11a_1k)
        assert S.primes == (3, 5)

    def test_needs_2k_candidates(self, delta_1k):
        with pytest.raises(InfeasibleError):
            greedy_maximal([3, 5, 7], 2, delta_1k)

    def test_size_target_stops_early(self, f11a_1k):
        candidates, _ = prime_sets(f11a_1k, 1000)
        S = greedy_maximal(candidates, 1, f11a_1k, size_target=5)
        assert len(S) == 5
        assert S.check_bound <= candidates[5]

    def test_delta_k2_small(self, delta_1k):
        candidates, _ = prime_sets(delta_1k, 200)
        S = greedy_maximal(candidates, 2, delta_1k)
        assert len(S) >= 4
        assert is_admissible(S.primes, 2, delta_1k).ok


class TestDyadic:
    def test_11a_l0_4(self, f11a_1k):
        S = dyadic_construction(f11a_1k, 1, 4)
        assert len(S.primes) == 2
        p1, p2 = S.primes
        assert 16 <= p1 <= 32 and 256 <= p2 <= 512
        assert abs(f11a_1k.a(p1)) < abs(f11a_1k.a(p2))
        _, has_large = prime_sets(f11a_1k, 1000)
        assert has_large(p1) and has_large(p2)
        assert is_admissible(S.primes, 1, f11a_1k).ok

    def test_small_l0_is_guarded(self, f11a_1k):
        # below the contradiction threshold the admissibility check decides;
        # here the first interval [4, 8] has no qualifying prime at all
        with pytest.raises(InfeasibleError):
            dyadic_construction(f11a_1k, 1, 2)

    def test_delta_k6_infeasible(self, delta_1k):
        from newform_basis import TableTooSmallError

        with pytest.raises(TableTooSmallError):
            dyadic_construction(delta_1k, 6, 18)


class TestRepair:
    def test_all_excluded_primes_repairable(self, f11a_1k):
        candidates, _ = prime_sets(f11a_1k, 300)
        S = greedy_maximal(candidates, 1, f11a_1k)
        members = set(S.primes)
        excluded = [p for p in candidates if p not in members]
        assert excluded
        for p in excluded:
            witness = repair(p, S, f11a_1k)
            assert witness.verify(f11a_1k)
            assert len(witness.plus) == 1 and len(witness.minus) == 0

    def test_k2_witness_shape(self, delta_1k):
        candidates, _ = prime_sets(delta_1k, 200)
        S = greedy_maximal(candidates, 2, delta_1k)
        members = set(S.primes)
        excluded = [p for p in candidates if p not in members]
        for p in excluded:
            witness = repair(p, S, delta_1k)
            assert witness.verify(delta_1k)
            assert len(witness.plus) == 2 and len(witness.minus) == 1

    def test_member_rejected(self, f11a_1k):
        candidates, _ = prime_sets(f11a_1k, 300)
        S = greedy_maximal(candidates, 1, f11a_1k)
        with pytest.raises(ValueError):
            repair(S.primes[0], S, f11a_1k)

    def test_non_maximal_precondition_detected(self, f11a_1k):
        from newform_basis import AdmissibleSet

        S = AdmissibleSet(1, (3, 5), "hash-collision", 5)
        with pytest.raises(InfeasibleError, match="maximality"):
            repair(13, S, f11a_1k)  # a(13) = 4 differs from a(3), a(5)


class TestCardinality:
    def test_example_values(self):
        report = cardinality_report(12, 10**4, 6)
        assert report.bound_value == pytest.approx(10 ** (4 * 11 / 12))
        assert report.ratio == pytest.approx(12 / 10 ** (4 * 11 / 12))
        assert report.lower_bound_met

    def test_lower_bound_flag(self):
        assert not cardinality_report(3, 100, 2).lower_bound_met

    def test_ratio_sweep_is_reported(self, f11a_1k):
        # trend across M: the report only records values, no monotonicity claim
        ratios = []
        for M in (100, 300, 1000):
            candidates, _ = prime_sets(f11a_1k, M)
            S = greedy_maximal(candidates, 1, f11a_1k)
            ratios.append(cardinality_report(S, M, 1).ratio)
        assert all(r > 0 for r in ratios)
