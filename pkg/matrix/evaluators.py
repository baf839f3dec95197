"""Column-sweep evaluators for the matrix functionals S, F and H.

All three are sums over paths: injective maps from the n row slots to
the allowed columns, weighted by the product of the chosen entries.

* S sums over every path (sum of permanental minors).
* F keeps the paths whose columns increase with the row index.
* H keeps the paths that increase inside every row group.
"""

import logging
from enum import Enum
from typing import Optional, Union

import numpy as np

from field import DomainError, FieldElement, GuardExceeded

from .row_matrix import ColumnExclusion, RowMatrix

logger = logging.getLogger(__name__)

SUBSET_DP_ROWS = 20


class MatrixKind(str, Enum):
    S = "S"
    F = "F"
    H = "H"


def _kind(kind: Union[str, MatrixKind]) -> MatrixKind:
    try:
        return MatrixKind(kind)
    except ValueError:
        raise DomainError(f"unknown matrix function kind {kind!r}") from None


def _forward(R: np.ndarray, columns, p: int) -> int:
    n = R.shape[0]
    dp = np.zeros(n + 1, dtype=np.int64)
    dp[0] = 1
    for c in columns:
        dp[1:] = (dp[1:] + dp[:-1] * R[:, c]) % p
    return int(dp[n])


def _hybrid(M: RowMatrix, columns) -> int:
    p = M.p
    mults = M.multiplicities
    dp = np.zeros(tuple(m + 1 for m in mults), dtype=np.int64)
    dp[(0,) * len(mults)] = 1
    rows = [row.entries for row, _ in M.groups]
    for c in columns:
        new = dp.copy()
        for t, m in enumerate(mults):
            weight = int(rows[t][c])
            if m == 0 or weight == 0:
                continue
            src = [slice(None)] * len(mults)
            dst = [slice(None)] * len(mults)
            src[t] = slice(0, m)
            dst[t] = slice(1, m + 1)
            new[tuple(dst)] += dp[tuple(src)] * weight
        dp = new % p
    return int(dp[tuple(mults)])


def _subsets(R: np.ndarray, columns, p: int) -> int:
    n = R.shape[0]
    masks = np.arange(1 << n, dtype=np.int64)
    free = [masks[((masks >> i) & 1) == 0] for i in range(n)]
    dp = np.zeros(1 << n, dtype=np.int64)
    dp[0] = 1
    for c in columns:
        new = dp.copy()
        for i in range(n):
            weight = int(R[i, c])
            if weight:
                new[free[i] | (1 << i)] += dp[free[i]] * weight
        dp = new % p
    return int(dp[-1])


def eval_matrix_function(
    kind: Union[str, MatrixKind],
    M: RowMatrix,
    excluded: Optional[ColumnExclusion] = None,
    max_subset_rows: int = SUBSET_DP_ROWS,
) -> FieldElement:
    kind = _kind(kind)
    excluded = (excluded or ColumnExclusion()).validate(M.N)
    columns = excluded.allowed(M.N)
    n = M.n
    if kind is MatrixKind.S and n > max_subset_rows:
        raise GuardExceeded("subset DP rows", max_subset_rows, n)
    if n == 0:
        return FieldElement(1, M.p)
    if n > len(columns):
        return FieldElement(0, M.p)

    if kind is MatrixKind.F:
        value = _forward(M.array(), columns, M.p)
    elif kind is MatrixKind.H:
        value = _hybrid(M, columns)
    else:
        value = _subsets(M.array(), columns, M.p)
    return FieldElement(value, M.p)
