from functools import lru_cache

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import spcircuits as sp
from spcircuits.counting import (
    Partition,
    appearances_closed_form,
    circuits_from_partition,
    divisor_count,
    divisor_sum_identity,
    double_count_identity,
    partitions,
    window_sum_identity,
)
from spcircuits.errors import TableUnderflowError

from conftest import TOTALS_1_TO_12, TOTAL_21


@lru_cache(maxsize=None)
def _partition_count(n: int, max_part: int) -> int:
    """Independent partition-counting recurrence for cross-checking."""
    if n == 0:
        return 1
    if max_part == 0:
        return 0
    total = 0
    for first in range(1, max_part + 1):
        if first > n:
            break
        total += _partition_count(n - first, first)
    return total


class TestPartitions:
    def test_singleton(self):
        assert partitions(1) == [Partition((1,))]

    def test_four(self):
        assert [p.parts for p in partitions(4)] == [
            (4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)
        ]

    def test_count_at_twelve(self):
        assert len(partitions(12)) == 77

    @given(st.integers(min_value=1, max_value=25))
    @settings(deadline=None)
    def test_partition_properties(self, n):
        ps = partitions(n)
        assert len(ps) == _partition_count(n, n)
        seen = set()
        for p in ps:
            assert sum(p.parts) == n
            assert all(a >= b for a, b in zip(p.parts, p.parts[1:]))
            seen.add(p.parts)
        assert len(seen) == len(ps)

    def test_accessors(self):
        p = Partition((3, 2, 2, 1))
        assert p.support() == (1, 2, 3)
        assert p.multiplicity(2) == 2
        assert p.multiplicity(5) == 0


class TestCountTable:
    def test_first_twelve(self, counts60):
        assert list(counts60.totals[1:13]) == TOTALS_1_TO_12

    def test_base_case(self, counts60):
        assert counts60.total(0) == 1
        assert counts60.series_count(0) == 1

    def test_n_21(self):
        assert sp.count_table(21).total(21) == TOTAL_21

    def test_series_relation(self, counts60):
        for n in range(1, 61):
            delta = 1 if n == 1 else 0
            assert counts60.total(n) == 2 * counts60.series_count(n) - delta

    def test_underflow(self, counts60):
        with pytest.raises(TableUnderflowError):
            counts60.total(61)


class TestAppearances:
    def test_triangle_equals_closed_form(self, counts60):
        for n in range(1, 61):
            for i in range(1, n + 1):
                assert counts60.appearances(i, n) == appearances_closed_form(
                    i, n, counts60
                )

    def test_paper_spot_values(self, counts60):
        assert counts60.appearances(2, 6) == 13
        assert counts60.appearances(1, 12) == 21102
        assert counts60.appearances(1, 5) == 18
        assert counts60.appearances(7, 12) == 24  # equals total(5)
        assert counts60.appearances(3, 3) == 1

    def test_diagonal_is_one(self, counts60):
        for n in range(1, 61):
            assert counts60.appearances(n, n) == 1

    def test_reflection_stabilizes(self, counts60):
        # C_(n-i)(n) = total(i) once n > 2i
        for i in range(1, 11):
            for n in range(2 * i + 1, 61):
                assert counts60.appearances(n - i, n) == counts60.total(i)

    def test_large_i_equals_single_term(self, counts60):
        # for i > n/2 the window contains one term: total(n - i)
        for n in range(2, 40):
            for i in range(n // 2 + 1, n + 1):
                assert counts60.appearances(i, n) == counts60.total(n - i)

    def test_undefined_outside_triangle(self, counts60):
        with pytest.raises(ValueError):
            counts60.appearances(5, 4)


class TestPartitionFormula:
    def test_all_unit_parts(self, counts60):
        assert circuits_from_partition(Partition((1, 1, 1, 1)), counts60) == 1

    def test_single_part(self, counts60):
        for n in (1, 4, 9):
            p = Partition((n,))
            assert circuits_from_partition(p, counts60) == counts60.series_count(n)

    def test_sum_over_partitions_gives_total(self, counts60):
        for n in (4, 8, 12):
            total = sum(
                circuits_from_partition(p, counts60) for p in partitions(n)
            )
            assert total == counts60.total(n)

    def test_missing_counts_raise(self, counts60):
        with pytest.raises(TableUnderflowError):
            circuits_from_partition(Partition((61,)), counts60)


class TestDivisorCount:
    @pytest.mark.parametrize("n,expected", [(1, 1), (12, 6), (360, 24)])
    def test_values(self, n, expected):
        assert divisor_count(n) == expected

    @given(st.integers(min_value=1, max_value=500))
    def test_against_brute_force(self, n):
        assert divisor_count(n) == sum(1 for d in range(1, n + 1) if n % d == 0)


class TestIdentities:
    def test_double_count_all(self, counts60):
        for n in range(1, 61):
            assert double_count_identity(n, counts60)

    def test_double_count_hand_value(self, counts60):
        # 4*10 = 2*C_1(4) + 2*Q_2*C_2(4) + 3*Q_3*C_3(4) = 16 + 12 + 12
        assert 4 * counts60.total(4) == 2 * 8 + 2 * 2 * 3 + 3 * 4 * 1

    def test_divisor_sum_all(self, counts60):
        for n in range(1, 61):
            assert divisor_sum_identity(n, counts60)

    def test_divisor_sum_hand_value(self, counts60):
        lhs = sum(appearances_closed_form(i, 4, counts60) for i in range(1, 5))
        assert lhs == 13

    def test_window_sums(self, counts60):
        for i in range(1, 11):
            for n in range(1, 51):
                if n + i <= 60:
                    assert window_sum_identity(i, n, counts60)

    def test_window_hand_value(self, counts60):
        lhs = sum(counts60.appearances(3, 6 + k) for k in (1, 2, 3))
        assert lhs == 11 + 26 + 71 == sum(counts60.total(k) for k in range(7))
