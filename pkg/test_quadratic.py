#!/usr/bin/env python3
"""Tests for the S_4 second-derivative closed form, Dixon spectra and cubic rank bounds."""

import math
from fractions import Fraction

import numpy as np
import pytest

from field import DomainError, FieldVector, GuardExceeded
from functions import iterated_derivative, materialize
from quadratic import (
    AffineSupport, CubicTensor, QuadraticForm, SymmetricBitMatrix, af_event_estimate,
    af_membership, b_matrix, b_matrix_structural, common_zero_bound_check,
    dixon_spectrum_check, gf2_rank, gf2_rank_dense, gf2_rank_many, linear_part_from_table,
    linear_part_simplified, magnitude_bound_holds, minor_determinant_family,
    multilinear_degree, rank_tail_check, s_pair, second_derivative_s4, support_within,
)
from symmetric import MultiIndexPolynomial, SymmetricSpec, monomial_coefficient


def random_pairs(rng, N, count):
    return [(FieldVector.random(N, 2, rng), FieldVector.random(N, 2, rng)) for _ in range(count)]


def pairs_with_s(rng, N, s, count):
    out = []
    while len(out) < count:
        y, z = FieldVector.random(N, 2, rng), FieldVector.random(N, 2, rng)
        if s_pair(y, z) == s:
            out.append((y, z))
    return out


def random_symmetric(rng, N, zero_diagonal=False):
    m = np.triu(rng.integers(0, 2, size=(N, N)), k=1 if zero_diagonal else 0)
    return (m | m.T).astype(np.uint8)


# ---------------------------------------------------------------- closed form

def test_equal_directions_give_zero_form():
    rng = np.random.default_rng(0)
    for _ in range(5):
        y = FieldVector.random(7, 2, rng)
        assert not second_derivative_s4(y, y).table().any()


@pytest.mark.parametrize("N", [5, 6, 8])
def test_closed_form_matches_truth_table(N):
    rng = np.random.default_rng(N)
    s4 = materialize("sym:4", 2, N)
    for y, z in random_pairs(rng, N, 12):
        expected = iterated_derivative(s4, [y, z]).table
        got = second_derivative_s4(y, z).table()
        assert np.array_equal(got.astype(np.int64), np.asarray(expected, dtype=np.int64))


def test_quadratic_coefficient_matches_monomial_coefficient():
    rng = np.random.default_rng(3)
    spec = SymmetricSpec(4, 2, 6)
    for y, z in random_pairs(rng, 6, 10):
        q = second_derivative_s4(y, z).q
        assert q[0, 1] == monomial_coefficient(spec, [y, z], [0, 1])["h_form"].value


def test_structural_b_matrix_matches_entrywise():
    rng = np.random.default_rng(4)
    for y, z in random_pairs(rng, 9, 20):
        assert b_matrix_structural(y, z) == b_matrix(second_derivative_s4(y, z))


@pytest.mark.parametrize("N", range(2, 10))
def test_j_matrix_rank(N):
    assert SymmetricBitMatrix.j_matrix(N).rank() >= N - 1


def test_simplified_linear_part():
    rng = np.random.default_rng(5)
    for y, z in pairs_with_s(rng, 8, 0, 10):
        assert np.array_equal(linear_part_simplified(y, z), second_derivative_s4(y, z).linear)
    y, z = pairs_with_s(rng, 8, 1, 1)[0]
    with pytest.raises(DomainError):
        linear_part_simplified(y, z)


def test_closed_form_rejects_other_primes():
    y = FieldVector([1, 2, 0], 3)
    with pytest.raises(DomainError):
        second_derivative_s4(y, y)


# ---------------------------------------------------------------- GF(2) rank

def test_gf2_rank_basics():
    assert gf2_rank(np.eye(6, dtype=np.uint8)) == 6
    assert gf2_rank(np.zeros((5, 5), dtype=np.uint8)) == 0
    assert gf2_rank(np.ones((4, 4), dtype=np.uint8)) == 1


def test_alternating_matrices_have_even_rank():
    rng = np.random.default_rng(6)
    for N in range(2, 12):
        assert gf2_rank(random_symmetric(rng, N, zero_diagonal=True)) % 2 == 0


def test_gf2_rank_matches_row_reduction():
    rng = np.random.default_rng(7)
    for _ in range(30):
        M = rng.integers(0, 2, size=(rng.integers(1, 12), rng.integers(1, 70)))
        assert gf2_rank(M) == gf2_rank_dense(M)


def test_gf2_rank_many_matches_single_ranks():
    rng = np.random.default_rng(11)
    stack = rng.integers(0, 2, size=(25, 7, 7))
    assert list(gf2_rank_many(stack)) == [gf2_rank(m) for m in stack]
    assert gf2_rank_many(np.zeros((0, 3, 3))).shape == (0,)


def test_gf2_rank_rejects_vectors():
    with pytest.raises(DomainError):
        gf2_rank(np.ones(4))
    with pytest.raises(DomainError):
        gf2_rank_many(np.ones((4, 4)))


# ---------------------------------------------------------------- Dixon

@pytest.mark.parametrize("pairs,N,h", [
    ([(0, 1)], 2, 1),
    ([(0, 1), (2, 3)], 4, 2),
    ([], 3, 0),
])
def test_dixon_known_values(pairs, N, h):
    report = dixon_spectrum_check(QuadraticForm.from_terms(N, pairs, linear=[0]))
    assert report.h == h
    assert report.support_size == 4 ** h
    assert report.magnitude == Fraction(1, 2 ** h)
    assert report.passed


def test_dixon_on_random_forms():
    rng = np.random.default_rng(8)
    for _ in range(25):
        N = int(rng.integers(2, 9))
        Q = QuadraticForm(rng.integers(0, 2, size=(N, N)), rng.integers(0, 2, size=N), int(rng.integers(0, 2)))
        assert dixon_spectrum_check(Q).passed


def test_dixon_guard():
    with pytest.raises(GuardExceeded):
        dixon_spectrum_check(QuadraticForm.from_terms(6), cap=16)


def test_support_sits_in_affine_set_when_s_vanishes():
    rng = np.random.default_rng(9)
    for y, z in pairs_with_s(rng, 9, 0, 12):
        assert support_within(second_derivative_s4(y, z), AffineSupport.of(y, z))


@pytest.mark.parametrize("N", [7, 9, 10])
def test_magnitude_is_small_when_s_is_one(N):
    rng = np.random.default_rng(N)
    for y, z in pairs_with_s(rng, N, 1, 8):
        assert magnitude_bound_holds(second_derivative_s4(y, z), (N - 5) / 2)


def test_affine_support_members():
    y, z = FieldVector([1, 1, 0, 0], 2), FieldVector([0, 1, 1, 0], 2)
    support = AffineSupport.of(y, z)
    assert len(support.indices()) == 8
    assert support.contains(y * z)
    assert support.contains(y * z + y + z)
    assert not support.contains(FieldVector([1, 0, 0, 0], 2))


# ---------------------------------------------------------------- cubic forms

def test_cubic_tensor_is_symmetric():
    g = CubicTensor.from_triples(5, [(0, 1, 2), (1, 3, 4)])
    assert g.a[2, 0, 1] == 1 and g.a[4, 3, 1] == 1
    assert g.triples() == [(0, 1, 2), (1, 3, 4)]
    assert CubicTensor.from_polynomial(g.to_polynomial()).triples() == g.triples()


def test_cubic_tensor_validation():
    with pytest.raises(DomainError):
        CubicTensor.from_triples(4, [(0, 0, 1)])
    a = np.zeros((3, 3, 3), dtype=np.uint8)
    a[0, 1, 2] = 1
    with pytest.raises(DomainError):
        CubicTensor(a)


@pytest.mark.parametrize("N,member", [(3, True), (4, False)])
def test_af_membership_single_monomial(N, member):
    g = CubicTensor.from_triples(N, [(0, 1, 2)])
    result = af_membership(g, FieldVector.basis(N, 0, 2), FieldVector.basis(N, 1, 2))
    assert result.v == FieldVector.basis(N, 2, 2)
    assert result.member is member
    assert result.agree


def test_linear_part_agrees_with_truth_table():
    rng = np.random.default_rng(10)
    for _ in range(10):
        g = CubicTensor.random(6, rng)
        for y, z in random_pairs(rng, 6, 3):
            assert linear_part_from_table(g, y, z) == FieldVector(g.v(y, z), 2)
            assert af_membership(g, y, z).agree


@pytest.mark.parametrize("N", [3, 5])
def test_af_event_for_zero_cubic(N):
    report = af_event_estimate(CubicTensor.zero(N))
    target = Fraction(3, 4) ** N
    assert report.frequencies["0"] == target
    assert report.frequencies["y+z+1"] == target
    assert report.rank_average[0] == target
    assert report.holds


def test_af_event_for_random_cubic():
    rng = np.random.default_rng(11)
    for _ in range(3):
        report = af_event_estimate(CubicTensor.random(6, rng))
        assert report.holds
        assert report.union <= sum(report.frequencies.values())


def test_af_event_sampled_mode():
    N = 5
    report = af_event_estimate(CubicTensor.zero(N), mode="mc", samples=40000, seed=2)
    assert abs(report.frequencies["0"] - 0.75 ** N) < 5 * report.std_error + 1e-3


def test_af_event_guards():
    with pytest.raises(GuardExceeded):
        af_event_estimate(CubicTensor.zero(8), pair_cap=1 << 10)
    with pytest.raises(DomainError):
        af_event_estimate(CubicTensor.zero(3), mode="grid")


# ---------------------------------------------------------------- rank tails

@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_rank_tail_is_bounded(k):
    rng = np.random.default_rng(12)
    g = CubicTensor.random(8, rng)
    for C in (SymmetricBitMatrix.zeros(8), SymmetricBitMatrix.identity(8),
              SymmetricBitMatrix(random_symmetric(rng, 8))):
        assert rank_tail_check(g, C, k).holds


def test_rank_tail_sampled():
    rng = np.random.default_rng(13)
    report = rank_tail_check(CubicTensor.random(10, rng), SymmetricBitMatrix.zeros(10), 3,
                             mode="mc", samples=4000)
    assert report.holds


def test_rank_tail_of_zero_cubic_is_binomial():
    # A(z) = diag(z), so rank <= k - 1 exactly when |z| <= k - 1
    report = rank_tail_check(CubicTensor.zero(6), SymmetricBitMatrix.zeros(6), 3)
    assert report.frequency == report.bound


@pytest.mark.parametrize("k", [1, 2, 3])
def test_principal_minors_chain(k):
    rng = np.random.default_rng(14 + k)
    g = CubicTensor.random(6, rng)
    C = SymmetricBitMatrix(random_symmetric(rng, 6))
    minors, report = minor_determinant_family(g, C, k)
    assert len(minors) == math.comb(6, k)
    assert report.degree_ok
    assert report.holds


def test_first_minors_are_shifted_coordinates():
    g = CubicTensor.random(5, np.random.default_rng(15))
    minors, _ = minor_determinant_family(g, SymmetricBitMatrix.identity(5), 1)
    for (i,), table in minors.items():
        idx = np.arange(32)
        assert np.array_equal(table, 1 - ((idx >> i) & 1))


def test_common_zero_known_values():
    assert common_zero_bound_check({}, 5, 1).zeros == 1
    report = common_zero_bound_check({}, 10, 3)
    assert report.zeros == 56 == report.bound
    one = MultiIndexPolynomial.monomial(2, 3, [])
    shifted = common_zero_bound_check({(0,): one}, 3, 1)
    assert shifted.zeros == 1 and shifted.zero_mask[1]


def test_common_zero_subset_order_is_irrelevant():
    one = MultiIndexPolynomial.monomial(2, 3, [])
    sorted_key = common_zero_bound_check({(0, 1): one}, 3, 2)
    reversed_key = common_zero_bound_check({(1, 0): one}, 3, 2)
    assert sorted_key.zeros == reversed_key.zeros == 1
    assert np.array_equal(sorted_key.zero_mask, reversed_key.zero_mask)
    with pytest.raises(DomainError):
        common_zero_bound_check({(0, 1): one, (1, 0): None}, 3, 2)


def test_common_zero_validation():
    x0 = MultiIndexPolynomial.monomial(2, 4, [0])
    with pytest.raises(DomainError):
        common_zero_bound_check({(1,): x0}, 4, 1)
    with pytest.raises(DomainError):
        common_zero_bound_check({(0, 1): None}, 4, 1)
    with pytest.raises(GuardExceeded):
        common_zero_bound_check({}, 12, 2, cap=1 << 10)


def test_multilinear_degree():
    idx = np.arange(16)
    assert multilinear_degree(np.zeros(16)) == -1
    assert multilinear_degree(np.ones(16)) == 0
    assert multilinear_degree(((idx & 3) == 3).astype(np.uint8)) == 2
