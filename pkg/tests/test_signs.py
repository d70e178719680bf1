from fractions import Fraction

import pytest

from newform_basis import (
    CoeffTable,
    DELTA,
    NewformDescriptor,
    NotFoundError,
    TableTooSmallError,
    expand_eta_product,
    first_negative,
    large_coeff_density,
    prime_sets,
)


class TestFirstNegative:
    def test_delta(self, delta_1k):
        report = first_negative(delta_1k)
        assert report.n_f == 2
        assert report.bound_value == pytest.approx((4 * 36) ** 0.375)
        assert report.ratio == pytest.approx(2 / (144**0.375))

    def test_11a(self, f11a_1k):
        report = first_negative(f11a_1k)
        assert report.n_f == 2
        assert report.bound_value == pytest.approx(44**0.375)

    def test_level_coprimality_filter(self):
        # negative value at an index sharing a factor with the level is skipped
        values = [1, -5, 0, 0, 0, 0, 0, 0, -7, 0]
        table = CoeffTable(NewformDescriptor(2, 2, "synthetic"), 10, values)
        assert first_negative(table).n_f == 9

    def test_not_found(self):
        table = expand_eta_product(DELTA, 1)  # only a(1) = 1
        with pytest.raises(NotFoundError):
            first_negative(table)

    def test_monotone_under_extension(self, delta_1k):
        assert first_negative(delta_1k.truncate(5)).n_f == first_negative(delta_1k).n_f


class TestDensity:
    def test_delta_small_range(self, delta_1k):
        report = large_coeff_density(delta_1k, 10)
        assert (report.count_large, report.count_all) == (0, 4)
        assert report.alpha_hat == Fraction(0, 4)
        assert not report.undefined

    def test_empty_range_flagged(self, delta_1k):
        report = large_coeff_density(delta_1k, 1)
        assert (report.count_large, report.count_all) == (0, 0)
        assert report.undefined

    def test_positive_density_at_1000(self, delta_1k, f11a_1k):
        for table in (delta_1k, f11a_1k):
            report = large_coeff_density(table, 1000)
            assert 0 < report.alpha_hat < 1

    def test_level_primes_excluded(self, f11a_1k):
        # 11 | N, so it is not counted among the 168 primes <= 1000
        assert large_coeff_density(f11a_1k, 1000).count_all == 167

    def test_range_check(self, delta_1k):
        with pytest.raises(TableTooSmallError):
            large_coeff_density(delta_1k, 1001)


class TestPrimeSets:
    def test_delta_example(self, delta_1k):
        candidates, _ = prime_sets(delta_1k, 10)
        assert candidates == [3, 5, 7]

    def test_11a_excludes_level(self, f11a_1k):
        candidates, _ = prime_sets(f11a_1k, 13)
        assert candidates == [3, 5, 7, 13]

    def test_empty_interval(self, delta_1k):
        candidates, _ = prime_sets(delta_1k, 2)  # (n_f, n_f] is empty
        assert candidates == []

    def test_large_coeff_predicate(self, f11a_1k):
        _, has_large = prime_sets(f11a_1k, 1000)
        assert has_large(31)   # a(31) = 7, 49 > 31
        assert not has_large(17)  # a(17) = -2, 4 < 17
