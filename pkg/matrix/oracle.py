from itertools import permutations
from typing import Optional, Union

from field import FieldElement, GuardExceeded

from .evaluators import MatrixKind, _kind
from .row_matrix import ColumnExclusion, RowMatrix

ORACLE_ROWS = 8
ORACLE_COLUMNS = 12


def _monotone(path, kind: MatrixKind, group_of) -> bool:
    if kind is MatrixKind.S:
        return True
    if kind is MatrixKind.F:
        return all(a < b for a, b in zip(path, path[1:]))
    for a in range(len(path) - 1):
        if group_of[a] == group_of[a + 1] and path[a] >= path[a + 1]:
            return False
    return True


def brute_path_oracle(
    kind: Union[str, MatrixKind],
    M: RowMatrix,
    excluded: Optional[ColumnExclusion] = None,
    max_rows: int = ORACLE_ROWS,
    max_columns: int = ORACLE_COLUMNS,
) -> FieldElement:
    """Sum over all injections rows -> allowed columns, filtered by kind."""
    kind = _kind(kind)
    if M.n > max_rows:
        raise GuardExceeded("oracle rows", max_rows, M.n)
    if M.N > max_columns:
        raise GuardExceeded("oracle columns", max_columns, M.N)
    columns = (excluded or ColumnExclusion()).validate(M.N).allowed(M.N)
    R = M.array()
    group_of = [t for t, (_, m) in enumerate(M.groups) for _ in range(m)]

    total = 0
    for path in permutations(columns, M.n):
        if not _monotone(path, kind, group_of):
            continue
        term = 1
        for i, c in enumerate(path):
            term = (term * int(R[i, c])) % M.p
            if term == 0:
                break
        total += term
    return FieldElement(total % M.p, M.p)
