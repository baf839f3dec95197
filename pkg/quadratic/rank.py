import logging
from typing import List

import numpy as np

from field import DomainError, rank_mod_p

logger = logging.getLogger(__name__)


def pack_rows(M) -> List[int]:
    """Each row as a Python int, bit j = column j."""
    bits = np.asarray(getattr(M, "bits", M), dtype=np.uint8) & 1
    if bits.ndim != 2:
        raise DomainError(f"expected a 2-d bit matrix, got shape {bits.shape}")
    packed = np.packbits(bits, axis=1, bitorder="little")
    return [int.from_bytes(row.tobytes(), "little") for row in packed]


def gf2_rank(M) -> int:
    """Rank over F_2 by elimination on word-packed rows."""
    pivots = {}
    for row in pack_rows(M):
        while row:
            top = row.bit_length() - 1
            if top not in pivots:
                pivots[top] = row
                break
            row ^= pivots[top]
    return len(pivots)


def gf2_rank_dense(M) -> int:
    """Row reduction on the integer matrix mod 2."""
    return rank_mod_p(np.asarray(getattr(M, "bits", M), dtype=np.int64), 2)


def gf2_rank_many(stack: np.ndarray) -> np.ndarray:
    """Rank of every matrix in an (m, N, N) stack."""
    stack = np.asarray(stack)
    if stack.ndim != 3:
        raise DomainError(f"expected an (m, N, N) stack, got shape {stack.shape}")
    return np.array([gf2_rank(m) for m in stack], dtype=np.int64)
