import logging
from typing import List, Tuple

import numpy as np

from .errors import DomainError
from .prime_field import check_prime

logger = logging.getLogger(__name__)


def row_reduce(A: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form of A over F_p and its pivot columns."""
    check_prime(p)
    R = np.array(A, dtype=np.int64) % p
    if R.ndim != 2:
        raise DomainError("row_reduce expects a 2-d array")
    rows, cols = R.shape
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(R[r:, c])[0]
        if nonzero.size == 0:
            continue
        pivot = r + int(nonzero[0])
        if pivot != r:
            R[[r, pivot]] = R[[pivot, r]]
        R[r] = (R[r] * pow(int(R[r, c]), p - 2, p)) % p
        factors = R[:, c].copy()
        factors[r] = 0
        R = (R - factors[:, None] * R[r][None, :]) % p
        pivots.append(c)
        r += 1
    return R, pivots


def rank_mod_p(A: np.ndarray, p: int) -> int:
    A = np.asarray(A)
    if A.size == 0:
        return 0
    return len(row_reduce(A, p)[1])


def kernel_basis(A: np.ndarray, p: int) -> np.ndarray:
    """Rows spanning {x : A x = 0} over F_p; shape (N - rank, N)."""
    A = np.asarray(A, dtype=np.int64)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    R, pivots = row_reduce(A, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, c in enumerate(free):
        basis[t, c] = 1
        for r, pc in enumerate(pivots):
            basis[t, pc] = (-R[r, c]) % p
    return basis
