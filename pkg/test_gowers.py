#!/usr/bin/env python3
"""Tests for Gowers norms, the fixed-set bound, power-product laws and the vanishing lemma."""

from fractions import Fraction

import numpy as np
import pytest

from field import DomainError, FieldVector, GuardExceeded
from functions import FiniteFunction, all_points, iterated_derivative, materialize
from gowers import (
    ConstraintSet, chain_bound_estimate, constraint_set, event_a_mask, event_constraints,
    fixed_set_bound_check, gowers_norm_direct, gowers_norm_exact, gowers_norm_mc,
    kernel_fraction, orbit_representatives, power_product_distribution, sample_event_a,
    vanishing_lemma_check, vanishing_sides,
)
from symmetric import MultiIndexPolynomial


def random_function(rng, p, N):
    return FiniteFunction.dense(p, N, rng.integers(0, p, size=p ** N))


@pytest.mark.parametrize("N,k", [(1, 1), (2, 2), (3, 3), (3, 4), (4, 2), (4, 3), (4, 4)])
def test_direct_definition_matches_recursion(N, k):
    rng = np.random.default_rng(10 * N + k)
    for _ in range(3):
        f = random_function(rng, 2, N)
        assert gowers_norm_direct(f, k).exact == gowers_norm_exact(f, k).exact


@pytest.mark.parametrize("k", [1, 2, 3])
def test_direct_definition_matches_recursion_mod3(k):
    rng = np.random.default_rng(20 + k)
    f = random_function(rng, 3, 2)
    direct = gowers_norm_direct(f, k)
    exact = gowers_norm_exact(f, k)
    assert abs(direct.raw_power - exact.raw_power) < 1e-9
    assert abs(direct.imag_part) < 1e-9


@pytest.mark.parametrize("p,N", [(2, 4), (2, 6), (3, 3)])
def test_monotone_in_order(p, N):
    rng = np.random.default_rng(p * 7 + N)
    for _ in range(5):
        f = random_function(rng, p, N)
        values = [gowers_norm_exact(f, k).value for k in (1, 2, 3)]
        assert values[0] <= values[1] + 1e-9
        assert values[1] <= values[2] + 1e-9
        assert all(0 <= v <= 1 for v in values)


@pytest.mark.parametrize("d", [0, 1, 2, 3])
def test_degree_characterization(d):
    rng = np.random.default_rng(40 + d)
    N = 5
    low = MultiIndexPolynomial.random(2, N, d, rng)
    assert gowers_norm_exact(materialize(low, 2, N), d + 1).exact == 1
    high = low + MultiIndexPolynomial.monomial(2, N, list(range(d + 1)))
    assert gowers_norm_exact(materialize(high, 2, N), d + 1).exact < 1


def test_norm_known_values():
    assert gowers_norm_exact(materialize("sym:4", 2, 6), 5).value == 1
    x1x2 = materialize(MultiIndexPolynomial.monomial(2, 2, [0, 1]), 2, 2)
    est = gowers_norm_exact(x1x2, 2)
    assert est.exact == Fraction(1, 4)
    assert est.value == pytest.approx(2 ** -0.5)
    x1 = materialize(MultiIndexPolynomial.monomial(2, 3, [0]), 2, 3)
    assert gowers_norm_exact(x1, 1).value == 0
    assert gowers_norm_exact(x1, 2).value == 1


def test_exact_guards():
    f = materialize("sym:2", 2, 4)
    with pytest.raises(DomainError):
        gowers_norm_exact(f, 0)
    with pytest.raises(GuardExceeded):
        gowers_norm_exact(f, 4, budget=1000)
    with pytest.raises(DomainError):
        gowers_norm_exact(materialize("sym:2", 2, 30), 2)


def test_orbit_representatives_cover_the_space():
    for p, N in [(2, 5), (3, 4)]:
        assert sum(size for _, size in orbit_representatives(p, N)) == p ** N


@pytest.mark.parametrize("p,N,n,k", [(2, 6, 4, 4), (2, 5, 3, 5), (3, 3, 2, 3)])
def test_orbit_reduction_matches_full_average(p, N, n, k):
    f = materialize(f"sym:{n}", p, N)
    assert f.symmetric
    plain = FiniteFunction.dense(p, N, f.table)
    reduced, full = gowers_norm_exact(f, k), gowers_norm_exact(plain, k)
    if p == 2:
        assert reduced.exact == full.exact
    else:
        assert reduced.raw_power == pytest.approx(full.raw_power, abs=1e-9)


def test_mc_of_zero_is_exact():
    est = gowers_norm_mc(FiniteFunction.constant(2, 8), 4, samples=5000, seed=1)
    assert est.raw_power == 1 and est.std_error == 0 and est.samples == 5000


def test_mc_agrees_with_exact():
    rng = np.random.default_rng(50)
    f = random_function(rng, 2, 4)
    exact = gowers_norm_exact(f, 3)
    est = gowers_norm_mc(f, 3, samples=100_000, seed=7)
    assert abs(est.raw_power - exact.raw_power) <= 4 * est.std_error


def test_mc_is_reproducible_across_threads():
    f = materialize("sym:4", 2, 12)
    one = gowers_norm_mc(f, 3, samples=20_000, seed=3, threads=1)
    many = gowers_norm_mc(f, 3, samples=20_000, seed=3, threads=4)
    assert one == many


def test_mc_mod3_has_small_imaginary_part():
    rng = np.random.default_rng(60)
    f = random_function(rng, 3, 3)
    est = gowers_norm_mc(f, 2, samples=50_000, seed=9)
    assert abs(est.raw_power - gowers_norm_exact(f, 2).raw_power) <= 5 * est.std_error


def test_fixed_set_linear_case():
    f = FiniteFunction.dense(2, 2, [0, 1, 1, 0])
    out = fixed_set_bound_check(f, constraint_set(2, 2, [FieldVector([1, 1], 2)]))
    assert out.prob == Fraction(1, 2) and out.norm == 1 and out.holds and out.value == 0


def test_fixed_set_product_of_parities():
    u = FieldVector([1, 1, 0, 0, 1, 0], 2)
    v = FieldVector([0, 1, 1, 0, 0, 1], 2)
    points = all_points(2, 6)
    f = FiniteFunction.dense(2, 6, ((points @ u.entries) % 2) * ((points @ v.entries) % 2))
    out = fixed_set_bound_check(f, constraint_set(2, 6, [u, v]))
    assert out.prob == Fraction(1, 4)
    assert out.norm == pytest.approx(0.25 ** 0.25)
    assert out.holds


def test_fixed_set_errors():
    x1 = FiniteFunction.dense(2, 2, [0, 1, 0, 1])
    with pytest.raises(DomainError):
        fixed_set_bound_check(x1, constraint_set(2, 2, [FieldVector([1, 1], 2)]))
    empty = ConstraintSet(2, 3, (), constant_constraint=True)
    with pytest.raises(DomainError):
        fixed_set_bound_check(FiniteFunction.constant(2, 3), empty)
    with pytest.raises(DomainError):
        ConstraintSet(2, 2, ((0, FieldVector([1, 1], 2)),))


def test_second_derivative_is_fixed_on_event_set():
    rng = np.random.default_rng(70)
    events = sample_event_a(2, 8, 3, rng)
    s4 = materialize("sym:4", 2, 8)
    for y, z in events.pairs():
        f = iterated_derivative(s4, [y, z])
        out = fixed_set_bound_check(f, event_constraints(y, z))
        assert out.holds
        assert out.value == vanishing_sides(FieldVector.zeros(8, 2), y, z)[1]


def test_event_sampler_respects_constraints():
    rng = np.random.default_rng(80)
    events = sample_event_a(2, 10, 50, rng)
    assert events.accepted == 50 and not events.cap_exhausted
    assert event_a_mask(events.Y, events.Z, 2).all()
    capped = sample_event_a(3, 9, 10, rng, cap=100)
    assert capped.attempts <= 100


def test_kernel_fraction_is_exact_for_boolean():
    rng = np.random.default_rng(90)
    events = sample_event_a(2, 8, 5, rng)
    for y, z in events.pairs():
        assert kernel_fraction(y, z, rng) == event_constraints(y, z).mask().mean()


def test_vanishing_lemma_boolean():
    report = vanishing_lemma_check(2, 8, trials=100, seed=11)
    assert report.trials == 100 and report.failures == 0 and report.passed
    zero = FieldVector.zeros(8, 2)
    lhs, rhs = vanishing_sides(zero, zero, zero)
    assert lhs == 0 and rhs == 0


def test_vanishing_lemma_preconditions():
    with pytest.raises(DomainError):
        vanishing_lemma_check(2, 7, trials=10, seed=1)
    with pytest.raises(DomainError):
        vanishing_lemma_check(5, 10, trials=10, seed=1)


def test_vanishing_lemma_reports_exhausted_cap():
    report = vanishing_lemma_check(3, 9, trials=5, seed=2, cap=1)
    assert report.cap_exhausted and report.trials < 5 and not report.passed


def test_chain_bound_is_positive_and_below_event_rate():
    out = chain_bound_estimate(2, 8, samples=20_000, seed=5, pairs=16)
    assert 0 < out.pr_a < 1
    assert 0 < out.pr_m <= 1
    assert 0 < out.bound <= out.pr_a


def test_power_products_single_row_is_uniform():
    stat = power_product_distribution(1, 2, 9, samples=100_000, seed=1)
    assert stat.K == 1
    assert stat.total == pytest.approx(1.0)
    assert stat.l1 < 0.02


def test_power_products_decay():
    small = power_product_distribution(2, 2, 4, samples=200_000, seed=2)
    large = power_product_distribution(2, 2, 32, samples=200_000, seed=2)
    assert small.K == large.K == 3
    assert small.l1 == pytest.approx(0.0625, abs=0.02)
    assert large.l1 < 0.02
    assert small.l1 > large.l1


def test_power_products_guard():
    with pytest.raises(DomainError):
        power_product_distribution(13, 2, 8, samples=10, seed=0)
    with pytest.raises(DomainError):
        power_product_distribution(2, 4, 8, samples=10, seed=0)
