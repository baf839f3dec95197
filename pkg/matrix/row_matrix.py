import logging
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

import numpy as np

from field import DomainError, FieldVector

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RowMatrix:
    """An n x N matrix over F_p whose rows come in groups r^(l).

    The group list doubles as the ordered partition used by the hybrid
    functional: group t contributes l_t consecutive copies of its row.
    """

    p: int
    N: int
    groups: Tuple[Tuple[FieldVector, int], ...]

    def __post_init__(self):
        for row, mult in self.groups:
            if row.p != self.p or row.N != self.N:
                raise DomainError(
                    f"row in F_{row.p}^{row.N} does not fit a matrix over F_{self.p}^{self.N}"
                )
            if mult < 0:
                raise DomainError(f"negative multiplicity {mult}")

    @classmethod
    def from_rows(cls, rows: Sequence[FieldVector], p: int = None, N: int = None) -> "RowMatrix":
        if rows:
            p, N = rows[0].p, rows[0].N
        if p is None or N is None:
            raise DomainError("an empty matrix needs explicit p and N")
        return cls(p, N, tuple((r, 1) for r in rows))

    @classmethod
    def from_groups(cls, groups: Sequence[Tuple[FieldVector, int]], p: int = None,
                    N: int = None) -> "RowMatrix":
        groups = tuple((r, int(m)) for r, m in groups)
        if groups:
            p, N = groups[0][0].p, groups[0][0].N
        if p is None or N is None:
            raise DomainError("an empty matrix needs explicit p and N")
        return cls(p, N, groups)

    @property
    def n(self) -> int:
        return sum(m for _, m in self.groups)

    @property
    def multiplicities(self) -> List[int]:
        return [m for _, m in self.groups]

    def flat_rows(self) -> List[FieldVector]:
        out = []
        for row, mult in self.groups:
            out.extend([row] * mult)
        return out

    def array(self) -> np.ndarray:
        rows = self.flat_rows()
        if not rows:
            return np.zeros((0, self.N), dtype=np.int64)
        return np.stack([r.entries for r in rows])

    def permuted(self, order: Sequence[int]) -> "RowMatrix":
        """Flattened rows reordered, every row its own group."""
        rows = self.flat_rows()
        return RowMatrix.from_rows([rows[i] for i in order], self.p, self.N)

    def without_columns(self, columns: Iterable[int]) -> "RowMatrix":
        keep = [j for j in range(self.N) if j not in set(columns)]
        groups = tuple(
            (FieldVector(row.entries[keep], self.p), mult) for row, mult in self.groups
        )
        return RowMatrix(self.p, len(keep), groups)


@dataclass(frozen=True)
class ColumnExclusion:
    """Sorted set T of excluded 0-based column indices."""

    columns: Tuple[int, ...] = ()

    @classmethod
    def of(cls, columns: Iterable[int], N: int) -> "ColumnExclusion":
        columns = list(columns)
        if len(set(columns)) != len(columns):
            raise DomainError(f"duplicate excluded columns {columns}")
        for j in columns:
            if not 0 <= j < N:
                raise DomainError(f"excluded column {j} out of range for N={N}")
        return cls(tuple(sorted(columns)))

    def validate(self, N: int) -> "ColumnExclusion":
        return ColumnExclusion.of(self.columns, N)

    def allowed(self, N: int) -> List[int]:
        banned = set(self.columns)
        return [j for j in range(N) if j not in banned]


@dataclass(frozen=True)
class SetSystem:
    """Ordered list of pairwise-disjoint, possibly empty subsets of [n]."""

    blocks: Tuple[frozenset, ...] = field(default_factory=tuple)

    def __post_init__(self):
        seen = set()
        for block in self.blocks:
            if seen & block:
                raise DomainError("set system blocks must be disjoint")
            seen |= block

    @classmethod
    def of(cls, blocks, n: int) -> "SetSystem":
        frozen = tuple(frozenset(b) for b in blocks)
        for block in frozen:
            if any(not 0 <= i < n for i in block):
                raise DomainError(f"set system block {sorted(block)} is not inside range({n})")
        return cls(frozen)

    @property
    def support(self) -> frozenset:
        out = frozenset()
        for block in self.blocks:
            out |= block
        return out
