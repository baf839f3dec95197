#!/usr/bin/env python3
"""Tests for field arithmetic, vectors and Lucas combinatorics."""

from math import comb

import numpy as np
import pytest

from field import (
    DomainError, FieldElement, FieldVector, PrimeField,
    base_p_digits, character, lucas_binomial, power_vector, product_functional,
)


def test_power_vector_known_values():
    assert power_vector(FieldVector([0, 1, 2], 3), 2).tolist() == [0, 1, 1]
    assert power_vector(FieldVector([2, 0, 4], 5), 0).tolist() == [1, 1, 1]
    assert power_vector(FieldVector([1, 0, 1], 2), 1).tolist() == [1, 0, 1]


def test_power_vector_rejects_large_exponent():
    with pytest.raises(DomainError):
        power_vector(FieldVector([1, 2], 3), 3)


@pytest.mark.parametrize("p", [2, 3, 5])
def test_power_vector_matches_repeated_products(p):
    rng = np.random.default_rng(p)
    for _ in range(20):
        x = FieldVector.random(12, p, rng)
        for i in range(1, p):
            expected = np.ones(12, dtype=np.int64)
            for _ in range(i):
                expected = (expected * x.entries) % p
            assert power_vector(x, i).tolist() == expected.tolist()
        fermat = power_vector(x, p - 1).entries
        assert set(np.unique(fermat).tolist()) <= {0, 1}


def test_product_functional_known_values():
    rows = [FieldVector([1, 0, 1], 2), FieldVector([1, 1, 0], 2)]
    prod, total = product_functional(rows, {0, 1})
    assert prod.tolist() == [1, 0, 0] and total == 1

    prod, total = product_functional(rows, set())
    assert prod.tolist() == [1, 1, 1] and total == 1

    prod, total = product_functional([FieldVector([2, 2], 3)], {0})
    assert prod.tolist() == [2, 2] and total == 1


def test_product_functional_out_of_range():
    with pytest.raises(DomainError):
        product_functional([FieldVector([1, 0], 2)], {3})


@pytest.mark.parametrize("p", [2, 3, 5])
def test_product_functional_is_multiplicative(p):
    rng = np.random.default_rng(10 + p)
    rows = [FieldVector.random(9, p, rng) for _ in range(5)]
    a, _ = product_functional(rows, {0, 2})
    b, _ = product_functional(rows, {1, 4})
    ab, _ = product_functional(rows, {0, 1, 2, 4})
    assert (a * b) == ab


def test_lucas_known_values():
    assert lucas_binomial(5, 4, 2) == 1
    assert lucas_binomial(10, 2, 3) == 0
    assert lucas_binomial(17, 0, 5) == 1
    assert lucas_binomial(3, 7, 3) == 0


@pytest.mark.parametrize("p", [2, 3, 5])
def test_lucas_exhaustive(p):
    for n in range(41):
        for k in range(n + 1):
            assert lucas_binomial(n, k, p).value == comb(n, k) % p


def test_base_p_digits():
    assert base_p_digits(45, 3, 4) == [0, 0, 2, 1]
    assert base_p_digits(13, 3, 3) == [1, 1, 1]
    assert base_p_digits(0, 2, 3) == [0, 0, 0]
    with pytest.raises(DomainError):
        base_p_digits(4, 2, 0)


def test_field_element_arithmetic():
    F = PrimeField(5)
    assert F(3) + F(4) == 2
    assert F(2) * F(3) == 1
    assert -F(1) == 4
    assert F.inverse(2) == 3
    assert F.factorial(4) == 4
    assert F.factorial(5) == 0
    with pytest.raises(DomainError):
        PrimeField(4)
    with pytest.raises(DomainError):
        FieldElement(5, 5)


def test_vector_index_roundtrip_and_bits():
    x = FieldVector([1, 0, 2, 1], 3)
    assert FieldVector.from_index(x.index(), 4, 3) == x
    y = FieldVector([1, 0, 1, 1], 2)
    assert y.bits == 0b1101
    assert y.total() == 1
    assert y.dot(FieldVector([1, 1, 1, 0], 2)) == 0


def test_character_has_unit_modulus():
    for p in (2, 3, 5):
        for v in range(p):
            assert abs(abs(character(v, p)) - 1) < 1e-12
    assert character(1, 2) == -1
