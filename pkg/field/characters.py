"""The additive character e(x) = xi^x with xi = exp(2 pi i / p)."""

import cmath
from fractions import Fraction
from typing import Union

import numpy as np

from .prime_field import FieldElement, check_prime

CharacterValue = Union[complex, Fraction]


def unit_roots(p: int) -> np.ndarray:
    check_prime(p)
    return np.exp(2j * np.pi * np.arange(p) / p)


def character(x, p: int) -> complex:
    value = int(x.value if isinstance(x, FieldElement) else x) % p
    if p == 2:
        return complex(1 - 2 * value)
    return cmath.exp(2j * cmath.pi * value / p)


def character_array(values: np.ndarray, p: int) -> np.ndarray:
    """e applied elementwise; real signs for p = 2, complex otherwise."""
    values = np.asarray(values)
    if p == 2:
        return 1 - 2 * (values.astype(np.int64) & 1)
    return unit_roots(p)[np.mod(values, p)]
