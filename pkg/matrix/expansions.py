"""Inclusion-exclusion expansions of S, checked against the DP evaluators."""

import logging
from typing import Dict, FrozenSet, List, Sequence

from field import DomainError, FieldElement, FieldVector, GuardExceeded, PrimeField
from field.vectors import product_functional

from .evaluators import MatrixKind, eval_matrix_function
from .partitions import ordered_set_systems, set_partitions
from .row_matrix import RowMatrix

logger = logging.getLogger(__name__)

PARTITION_ROWS = 8
INCOMPLETE_LIMIT = 6


def _check_rows(rows: Sequence[FieldVector]):
    if not rows:
        raise DomainError("expansions need at least one row")
    p, N = rows[0].p, rows[0].N
    for r in rows:
        if r.p != p or r.N != N:
            raise DomainError("rows must share length and modulus")
    return p, N


def partition_expansion_sym(
    rows: List[FieldVector], max_rows: int = PARTITION_ROWS
) -> FieldElement:
    """S(r_1..r_n) as a signed sum over unordered partitions of the rows.

    Block B contributes (-1)^(|B|-1) (|B|-1)! <r_B>.
    """
    p, _ = _check_rows(rows)
    if len(rows) > max_rows:
        raise GuardExceeded("partition expansion rows", max_rows, len(rows))
    F = PrimeField(p)
    totals = {}
    total = 0
    for blocks in set_partitions(len(rows)):
        term = 1
        for block in blocks:
            key = tuple(block)
            if key not in totals:
                totals[key] = product_functional(rows, block)[1].value
            size = len(block)
            term = term * F.sign(size - 1) * F.factorial(size - 1) * totals[key] % p
            if term == 0:
                break
        total += term
    return FieldElement(total % p, p)


def incomplete_expansion(
    rows: List[FieldVector],
    missing: Sequence[int],
    max_size: int = INCOMPLETE_LIMIT,
) -> FieldElement:
    """S with columns j_1..j_k removed, expanded over ordered set systems.

    Sum over disjoint tau_1..tau_k of
    prod_t (-1)^|tau_t| |tau_t|! r_{tau_t}(j_t) * S(rows outside all tau_t).
    """
    p, N = _check_rows(rows)
    n, k = len(rows), len(missing)
    if n > max_size or k > max_size:
        raise GuardExceeded("incomplete expansion size", max_size, max(n, k))
    if len(set(missing)) != k:
        raise DomainError(f"duplicate missing columns {list(missing)}")
    for j in missing:
        if not 0 <= j < N:
            raise DomainError(f"missing column {j} out of range for N={N}")

    F = PrimeField(p)
    R = [r.entries for r in rows]
    rest_cache: Dict[FrozenSet[int], int] = {}

    def rest_value(used: FrozenSet[int]) -> int:
        if used not in rest_cache:
            rest = [rows[i] for i in range(n) if i not in used]
            M = RowMatrix.from_rows(rest, p, N)
            rest_cache[used] = eval_matrix_function(MatrixKind.S, M).value
        return rest_cache[used]

    total = 0
    for system in ordered_set_systems(n, k):
        term = 1
        for tau, j in zip(system.blocks, missing):
            size = len(tau)
            entry = 1
            for i in tau:
                entry = entry * int(R[i][j]) % p
            term = term * F.sign(size) * F.factorial(size) * entry % p
            if term == 0:
                break
        if term == 0:
            continue
        total += term * rest_value(system.support)
    return FieldElement(total % p, p)


def incomplete_single(rows: List[FieldVector], j: int) -> FieldElement:
    """One excluded column: sum over tau of (-1)^|tau| |tau|! r_tau(j) S(rest)."""
    return incomplete_expansion(rows, [j])
