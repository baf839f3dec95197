"""Character transform of e(f).

The coefficient at alpha is E_x e(f(x)) xi^{-<alpha, x>}. For p = 2 the
transform is an exact integer Walsh-Hadamard butterfly over signs; for
p > 2 it is an N-dimensional FFT over the (p,)*N cube.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from field import DomainError, FieldVector, character_array

from .finite_function import FiniteFunction

logger = logging.getLogger(__name__)

TOLERANCE = 1e-9


def walsh_hadamard(values: np.ndarray) -> np.ndarray:
    """Unnormalized WHT along the last axis (length a power of two)."""
    a = np.array(values, dtype=np.int64, copy=True)
    lead = a.shape[:-1]
    n = a.shape[-1]
    if n & (n - 1):
        raise DomainError(f"transform length {n} is not a power of two")
    h = 1
    while h < n:
        a = a.reshape(*lead, n // (2 * h), 2, h)
        u = a[..., 0, :]
        v = a[..., 1, :]
        a = np.stack((u + v, u - v), axis=-2)
        h *= 2
    return a.reshape(*lead, n)


def sign_counts(tables: np.ndarray) -> np.ndarray:
    """WHT of (-1)^table along the last axis: integers 2^N * coefficient."""
    return walsh_hadamard(1 - 2 * (np.asarray(tables, dtype=np.int64) & 1))


def character_fft(tables: np.ndarray, p: int, N: int) -> np.ndarray:
    """Normalized coefficients for p > 2; leading axes are batch axes."""
    tables = np.asarray(tables)
    lead = tables.shape[:-1]
    cube = character_array(tables, p).reshape(*lead, *((p,) * N))
    axes = tuple(range(len(lead), len(lead) + N))
    coeffs = np.fft.fftn(cube, axes=axes) / p ** N
    return coeffs.reshape(*lead, p ** N)


@dataclass
class Spectrum:
    """Character coefficients indexed by the point index of alpha.

    For p = 2 `counts` holds the exact integers 2^N * coefficient.
    """

    p: int
    N: int
    coefficients: np.ndarray
    counts: Optional[np.ndarray] = None

    def coefficient(self, alpha) -> complex:
        idx = alpha.index() if isinstance(alpha, FieldVector) else int(alpha)
        return complex(self.coefficients[idx])

    def exact(self, alpha) -> Fraction:
        if self.counts is None:
            raise DomainError("exact coefficients exist only for p = 2")
        idx = alpha.index() if isinstance(alpha, FieldVector) else int(alpha)
        return Fraction(int(self.counts[idx]), 2 ** self.N)

    def support(self) -> np.ndarray:
        if self.counts is not None:
            return np.flatnonzero(self.counts)
        return np.flatnonzero(np.abs(self.coefficients) > TOLERANCE)

    def parseval(self):
        """Sum of squared moduli: exact Fraction for p = 2."""
        if self.counts is not None:
            total = int(np.sum(self.counts.astype(object) ** 2))
            return Fraction(total, 4 ** self.N)
        return float(np.sum(np.abs(self.coefficients) ** 2))

    def fourth_moment(self):
        """Sum of |coefficient|^4, i.e. the U^2 norm to the fourth."""
        if self.counts is not None:
            total = int(np.sum(self.counts.astype(object) ** 4))
            return Fraction(total, 16 ** self.N)
        return float(np.sum(np.abs(self.coefficients) ** 4))

    def max_abs(self):
        if self.counts is not None:
            return Fraction(int(np.abs(self.counts).max()), 2 ** self.N)
        return float(np.abs(self.coefficients).max())


def character_spectrum(f: FiniteFunction) -> Spectrum:
    if not f.is_dense:
        raise DomainError("character_spectrum needs a dense function")
    if f.p == 2:
        counts = sign_counts(f.table)
        return Spectrum(2, f.N, counts / float(2 ** f.N), counts)
    return Spectrum(f.p, f.N, character_fft(f.table, f.p, f.N))
