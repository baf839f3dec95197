#!/usr/bin/env python3
"""Tests for the S / F / H matrix functionals and their expansions."""

from itertools import permutations
from math import factorial

import numpy as np
import pytest

from field import DomainError, FieldVector, GuardExceeded
from matrix import (
    ColumnExclusion, RowMatrix, SetSystem, brute_path_oracle, compositions,
    eval_matrix_function, incomplete_expansion, incomplete_single,
    ordered_set_systems, partition_expansion_sym, set_partitions,
)


def random_groups(rng, p, N, max_groups=3, max_mult=2):
    k = int(rng.integers(1, max_groups + 1))
    return [(FieldVector.random(N, p, rng), int(rng.integers(1, max_mult + 1))) for _ in range(k)]


def test_s_of_two_rows_case():
    y = FieldVector([1, 1, 0], 2)
    z = FieldVector([1, 0, 1], 2)
    assert eval_matrix_function("S", RowMatrix.from_rows([y, z])) == 1


@pytest.mark.parametrize("kind", ["S", "F", "H"])
def test_single_row_collapses_to_coordinate_sum(kind):
    r = FieldVector([1, 0, 1], 2)
    assert eval_matrix_function(kind, RowMatrix.from_rows([r])) == 0


def test_s_of_doubled_row_vanishes_in_char_two():
    rng = np.random.default_rng(1)
    for _ in range(20):
        y = FieldVector.random(7, 2, rng)
        assert eval_matrix_function("S", RowMatrix.from_groups([(y, 2)])) == 0


def test_empty_and_oversized_conventions():
    empty = RowMatrix.from_rows([], p=3, N=4)
    for kind in "SFH":
        assert eval_matrix_function(kind, empty) == 1
        assert brute_path_oracle(kind, empty) == 1
    r = FieldVector([1, 1], 3)
    tall = RowMatrix.from_rows([r, r, r])
    for kind in "SFH":
        assert eval_matrix_function(kind, tall) == 0


def test_guards():
    rows = [FieldVector([1] * 22, 2)] * 21
    with pytest.raises(GuardExceeded):
        eval_matrix_function("S", RowMatrix.from_rows(rows))
    with pytest.raises(GuardExceeded):
        brute_path_oracle("S", RowMatrix.from_rows([FieldVector([1] * 13, 2)]))
    with pytest.raises(DomainError):
        ColumnExclusion.of([0, 0], 3)
    with pytest.raises(DomainError):
        eval_matrix_function("X", RowMatrix.from_rows([FieldVector([1], 2)]))


@pytest.mark.parametrize("p", [2, 3])
def test_dp_matches_oracle(p):
    rng = np.random.default_rng(100 + p)
    for _ in range(250):
        N = int(rng.integers(1, 9))
        M = RowMatrix.from_groups(random_groups(rng, p, N, max_groups=3, max_mult=2))
        if M.n > 4:
            continue
        T = ColumnExclusion.of(rng.choice(N, size=int(rng.integers(0, 3)) if N > 2 else 0,
                                          replace=False).tolist(), N)
        for kind in "SFH":
            assert eval_matrix_function(kind, M, T) == brute_path_oracle(kind, M, T)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_h_versus_s_identity(p):
    rng = np.random.default_rng(200 + p)
    for _ in range(150):
        N = int(rng.integers(2, 10))
        M = RowMatrix.from_groups(random_groups(rng, p, N, max_groups=3, max_mult=3))
        s = eval_matrix_function("S", M).value
        h = eval_matrix_function("H", M).value
        if all(m < p for m in M.multiplicities):
            scale = 1
            for m in M.multiplicities:
                scale *= factorial(m)
            assert s == (scale * h) % p
        else:
            assert s == 0


def test_singleton_and_single_block_collapse():
    rng = np.random.default_rng(7)
    for _ in range(50):
        rows = [FieldVector.random(8, 3, rng) for _ in range(3)]
        singles = RowMatrix.from_rows(rows)
        assert eval_matrix_function("H", singles) == eval_matrix_function("S", singles)
        block = RowMatrix.from_groups([(rows[0], 3)])
        assert eval_matrix_function("H", block) == eval_matrix_function("F", block)


def test_s_is_sum_of_forward_over_row_orders():
    rng = np.random.default_rng(8)
    for n in range(1, 5):
        for _ in range(10):
            M = RowMatrix.from_rows([FieldVector.random(7, 3, rng) for _ in range(n)])
            total = sum(eval_matrix_function("F", M.permuted(order)).value
                        for order in permutations(range(n)))
            assert eval_matrix_function("S", M).value == total % 3


def test_exclusion_equals_deleted_columns():
    rng = np.random.default_rng(9)
    for _ in range(50):
        N = 9
        M = RowMatrix.from_groups(random_groups(rng, 3, N))
        cols = sorted(rng.choice(N, size=3, replace=False).tolist())
        for kind in "SFH":
            assert (eval_matrix_function(kind, M, ColumnExclusion.of(cols, N))
                    == eval_matrix_function(kind, M.without_columns(cols)))


def test_partition_expansion_known_values():
    y = FieldVector([1, 1, 0], 2)
    z = FieldVector([1, 0, 1], 2)
    assert partition_expansion_sym([y, z]) == 1
    assert partition_expansion_sym([y]) == y.total()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_partition_expansion_matches_oracle(p):
    rng = np.random.default_rng(300 + p)
    for _ in range(120):
        n = int(rng.integers(1, 6))
        N = int(rng.integers(n, 11))
        rows = [FieldVector.random(N, p, rng) for _ in range(n)]
        expected = eval_matrix_function("S", RowMatrix.from_rows(rows))
        assert partition_expansion_sym(rows) == expected
        if n <= 4 and N <= 8:
            assert brute_path_oracle("S", RowMatrix.from_rows(rows)) == expected


def test_incomplete_expansion_single_row():
    r = FieldVector([2, 1, 0, 2, 1], 3)
    missing = [0, 3]
    expected = (int(r.entries.sum()) - 2 - 2) % 3
    assert incomplete_expansion([r], missing) == expected


@pytest.mark.parametrize("p", [2, 3, 5])
def test_incomplete_expansion_matches_dp(p):
    rng = np.random.default_rng(400 + p)
    for _ in range(120):
        n = int(rng.integers(1, 5))
        k = int(rng.integers(1, 4))
        N = int(rng.integers(k + 1, 10))
        rows = [FieldVector.random(N, p, rng) for _ in range(n)]
        missing = rng.choice(N, size=k, replace=False).tolist()
        expected = eval_matrix_function(
            "S", RowMatrix.from_rows(rows), ColumnExclusion.of(missing, N))
        assert incomplete_expansion(rows, missing) == expected
        assert incomplete_single(rows, missing[0]) == eval_matrix_function(
            "S", RowMatrix.from_rows(rows), ColumnExclusion.of(missing[:1], N))


def test_incomplete_expansion_rejects_duplicates():
    with pytest.raises(DomainError):
        incomplete_expansion([FieldVector([1, 0, 1], 2)], [1, 1])


def test_enumerations():
    assert sum(1 for _ in set_partitions(4)) == 15
    assert next(iter(set_partitions(3))) == [[0, 1, 2]]
    assert sum(1 for _ in ordered_set_systems(3, 2)) == 27
    assert list(compositions(4, 2)) == [(3, 1), (2, 2), (1, 3)]
    assert list(compositions(2, 3)) == []
    assert list(compositions(0, 0)) == [()]


def test_ordered_set_systems_are_disjoint_set_systems():
    systems = list(ordered_set_systems(4, 2))
    assert len(systems) == 3 ** 4
    assert all(isinstance(s, SetSystem) and len(s.blocks) == 2 for s in systems)
    assert all(len(s.support) == sum(len(b) for b in s.blocks) for s in systems)
    assert systems[0].blocks == (frozenset(), frozenset())
    assert systems[-1].blocks == (frozenset(), frozenset({0, 1, 2, 3}))


def test_set_system_validation():
    assert SetSystem.of([[0, 2], [], [1]], 3).support == frozenset({0, 1, 2})
    with pytest.raises(DomainError):
        SetSystem.of([[0, 1], [1, 2]], 3)
    with pytest.raises(DomainError):
        SetSystem.of([[0, 3]], 3)
