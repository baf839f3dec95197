import logging
from typing import Iterable, List, Tuple

import numpy as np

from .errors import DomainError
from .prime_field import FieldElement, FieldVector

logger = logging.getLogger(__name__)


def power_vector(x: FieldVector, i: int) -> FieldVector:
    """Coordinatewise i-th power x^i; x^0 is the all-ones vector."""
    if not 0 <= i < x.p:
        raise DomainError(f"exponent {i} outside [0, {x.p})")
    if i == 0:
        return FieldVector.ones(x.N, x.p)
    return FieldVector(np.mod(x.entries ** i, x.p), x.p)


def power_rows(X: np.ndarray, i: int, p: int) -> np.ndarray:
    """power_vector applied to every row of an integer matrix."""
    if not 0 <= i < p:
        raise DomainError(f"exponent {i} outside [0, {p})")
    if i == 0:
        return np.ones_like(X)
    out = X.copy()
    for _ in range(i - 1):
        out = (out * X) % p
    return out


def product_functional(
    rows: List[FieldVector], tau: Iterable[int]
) -> Tuple[FieldVector, FieldElement]:
    """The pointwise product r_tau over rows indexed by tau and <r_tau, 1>.

    r_{} is the all-ones vector.
    """
    if not rows:
        raise DomainError("product_functional needs at least one row to fix N and p")
    p, N = rows[0].p, rows[0].N
    for r in rows[1:]:
        if r.p != p or r.N != N:
            raise DomainError("rows must share length and modulus")
    tau = sorted(set(tau))
    for t in tau:
        if not 0 <= t < len(rows):
            raise DomainError(f"row index {t} out of range for {len(rows)} rows")

    if p == 2:
        packed = (1 << N) - 1
        for t in tau:
            packed &= rows[t].bits
        prod = FieldVector([(packed >> j) & 1 for j in range(N)], 2)
        return prod, FieldElement(packed.bit_count() & 1, 2)

    acc = np.ones(N, dtype=np.int64)
    for t in tau:
        acc = (acc * rows[t].entries) % p
    prod = FieldVector(acc, p)
    return prod, prod.total()
