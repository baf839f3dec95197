"""Recover the reduced polynomial of a dense function."""

import logging
from typing import Dict, Tuple

import numpy as np

from field import DomainError, PrimeField
from symmetric import MultiIndexPolynomial

from .finite_function import FiniteFunction, points_of

logger = logging.getLogger(__name__)


def moebius(values: np.ndarray) -> np.ndarray:
    """Binary Moebius transform along the last axis (length 2^N)."""
    a = np.array(values, dtype=np.uint8, copy=True) & 1
    lead = a.shape[:-1]
    n = a.shape[-1]
    h = 1
    while h < n:
        a = a.reshape(*lead, n // (2 * h), 2, h)
        a[..., 1, :] ^= a[..., 0, :]
        h *= 2
    return a.reshape(*lead, n)


def _inverse_vandermonde(p: int) -> np.ndarray:
    """Inverse mod p of V[x, e] = x^e for x, e in [0, p)."""
    F = PrimeField(p)
    V = np.array([[pow(x, e, p) for e in range(p)] for x in range(p)], dtype=np.int64)
    aug = np.concatenate([V, np.eye(p, dtype=np.int64)], axis=1)
    for col in range(p):
        pivot = next(r for r in range(col, p) if aug[r, col] % p)
        aug[[col, pivot]] = aug[[pivot, col]]
        aug[col] = aug[col] * F.inverse(int(aug[col, col])) % p
        for r in range(p):
            if r != col and aug[r, col]:
                aug[r] = (aug[r] - aug[r, col] * aug[col]) % p
    return aug[:, p:]


def coefficient_table(f: FiniteFunction) -> np.ndarray:
    """Coefficients indexed like points: entry e holds the coefficient of x^e."""
    if not f.is_dense:
        raise DomainError("interpolation needs a dense function")
    if f.p == 2:
        return moebius(f.table).astype(np.int64)
    p, N = f.p, f.N
    W = _inverse_vandermonde(p)
    cube = f.cube().astype(np.int64)
    for axis in range(N):
        cube = np.moveaxis(np.tensordot(W, cube, axes=([1], [axis])) % p, 0, axis)
    return cube.reshape(-1)


def interpolate(f: FiniteFunction) -> MultiIndexPolynomial:
    coeffs = coefficient_table(f)
    support = np.flatnonzero(coeffs)
    exps = points_of(support, f.p, f.N)
    terms: Dict[Tuple[int, ...], int] = {
        tuple(int(e) for e in row): int(coeffs[i]) for row, i in zip(exps, support)
    }
    return MultiIndexPolynomial(f.p, f.N, terms)


def algebraic_degree(f: FiniteFunction) -> int:
    """Total degree of the reduced polynomial; -1 for the zero function."""
    coeffs = coefficient_table(f)
    support = np.flatnonzero(coeffs)
    if support.size == 0:
        return -1
    return int(points_of(support, f.p, f.N).sum(axis=1).max())
