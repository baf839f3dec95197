import logging
from typing import Callable, Optional

import numpy as np

from field import DomainError, FieldElement, FieldVector, GuardExceeded, check_prime

logger = logging.getLogger(__name__)

DENSE_CAP = 1 << 26
CHUNK = 1 << 16

Evaluator = Callable[[np.ndarray], np.ndarray]


def space_size(p: int, N: int) -> int:
    return p ** N


def digit_powers(p: int, N: int) -> np.ndarray:
    return np.array([p ** j for j in range(N)], dtype=np.int64)


def points_of(indices: np.ndarray, p: int, N: int) -> np.ndarray:
    """Rows of base-p digits: row r, column j is digit j of indices[r]."""
    idx = np.asarray(indices, dtype=np.int64).copy()
    out = np.empty((idx.size, N), dtype=np.int64)
    for j in range(N):
        idx, out[:, j] = np.divmod(idx, p)
    return out


def indices_of(X: np.ndarray, p: int) -> np.ndarray:
    X = np.asarray(X, dtype=np.int64)
    return X @ digit_powers(p, X.shape[1])


def all_points(p: int, N: int, cap: int = DENSE_CAP) -> np.ndarray:
    size = space_size(p, N)
    if size > cap:
        raise GuardExceeded("point enumeration", cap, size)
    return points_of(np.arange(size, dtype=np.int64), p, N)


class FiniteFunction:
    """A function F_p^N -> F_p, dense table or lazy evaluator.

    Dense tables are stored in lexicographic order with coordinate 0 least
    significant, one uint8 per point. `symmetric` marks functions invariant
    under permutations of the coordinates.
    """

    def __init__(
        self,
        p: int,
        N: int,
        table: Optional[np.ndarray] = None,
        evaluator: Optional[Evaluator] = None,
        symmetric: bool = False,
        name: str = "f",
    ):
        self.p = check_prime(p)
        self.N = int(N)
        if (table is None) == (evaluator is None):
            raise DomainError("give exactly one of table or evaluator")
        if table is not None:
            table = np.asarray(table)
            if table.shape != (space_size(p, N),):
                raise DomainError(f"dense table needs {space_size(p, N)} entries, got {table.shape}")
            if table.size and (int(table.max()) >= p or int(table.min()) < 0):
                raise DomainError(f"table values must lie in [0, {p})")
            table = table.astype(np.uint8, copy=True)
            table.setflags(write=False)
        self._table = table
        self._evaluator = evaluator
        self.symmetric = symmetric
        self.name = name

    @classmethod
    def dense(cls, p: int, N: int, table, **kwargs) -> "FiniteFunction":
        return cls(p, N, table=np.asarray(table), **kwargs)

    @classmethod
    def lazy(cls, p: int, N: int, evaluator: Evaluator, **kwargs) -> "FiniteFunction":
        return cls(p, N, evaluator=evaluator, **kwargs)

    @classmethod
    def constant(cls, p: int, N: int, value: int = 0) -> "FiniteFunction":
        return cls(p, N, table=np.full(space_size(p, N), value % p), symmetric=True,
                   name=f"const{value % p}")

    @property
    def is_dense(self) -> bool:
        return self._table is not None

    @property
    def size(self) -> int:
        return space_size(self.p, self.N)

    @property
    def table(self) -> np.ndarray:
        if self._table is None:
            raise DomainError(f"{self.name} is lazy; materialize it densely first")
        return self._table

    def cube(self) -> np.ndarray:
        """Table reshaped to (p,)*N; coordinate j sits on axis N-1-j."""
        return self.table.reshape((self.p,) * self.N)

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        if X.ndim != 2 or X.shape[1] != self.N:
            raise DomainError(f"points must have shape (M, {self.N})")
        if self._table is not None:
            return self._table[indices_of(X, self.p)].astype(np.int64)
        return np.mod(np.asarray(self._evaluator(X), dtype=np.int64), self.p)

    def evaluate(self, x: FieldVector) -> FieldElement:
        if x.p != self.p or x.N != self.N:
            raise DomainError("point does not belong to the domain of the function")
        return FieldElement(int(self.evaluate_many(x.entries[None, :])[0]), self.p)

    def to_dense(self, cap: int = DENSE_CAP) -> "FiniteFunction":
        if self.is_dense:
            return self
        if self.size > cap:
            raise GuardExceeded("dense cap", cap, self.size)
        table = np.empty(self.size, dtype=np.uint8)
        for start in range(0, self.size, CHUNK):
            idx = np.arange(start, min(start + CHUNK, self.size), dtype=np.int64)
            table[start:start + idx.size] = self.evaluate_many(points_of(idx, self.p, self.N))
        logger.debug(f"materialized {self.name} on {self.size} points")
        return FiniteFunction(self.p, self.N, table=table, symmetric=self.symmetric, name=self.name)

    def values(self, cap: int = DENSE_CAP) -> np.ndarray:
        """All p^N values as int64, evaluating lazily if needed."""
        return self.to_dense(cap).table.astype(np.int64)

    def same_space(self, other: "FiniteFunction"):
        if (self.p, self.N) != (other.p, other.N):
            raise DomainError(
                f"dimension mismatch: F_{self.p}^{self.N} vs F_{other.p}^{other.N}"
            )

    def __repr__(self):
        kind = "dense" if self.is_dense else "lazy"
        return f"FiniteFunction({self.name}, p={self.p}, N={self.N}, {kind})"
