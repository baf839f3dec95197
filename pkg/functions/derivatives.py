import logging
from itertools import combinations
from typing import List, Sequence

import numpy as np

from field import DomainError, FieldVector

from .finite_function import FiniteFunction, space_size

logger = logging.getLogger(__name__)


def translate_table(table: np.ndarray, p: int, N: int, y: FieldVector) -> np.ndarray:
    """Table of x -> f(x + y)."""
    if p == 2:
        idx = np.arange(space_size(2, N), dtype=np.int64) ^ y.index()
        return table[idx]
    cube = table.reshape((p,) * N)
    shift = tuple(-int(y.entries[j]) for j in range(N))
    axes = tuple(N - 1 - j for j in range(N))
    return np.roll(cube, shift, axis=axes).reshape(-1)


def derivative_table(table: np.ndarray, p: int, N: int, y: FieldVector) -> np.ndarray:
    """Table of f_y(x) = f(x + y) - f(x)."""
    shifted = translate_table(table, p, N, y)
    if p == 2:
        return shifted ^ table
    return ((shifted.astype(np.int16) - table.astype(np.int16)) % p).astype(np.uint8)


def _check_directions(f: FiniteFunction, directions: Sequence[FieldVector]):
    for y in directions:
        if not isinstance(y, FieldVector) or y.p != f.p or y.N != f.N:
            raise DomainError(f"direction {y!r} does not match F_{f.p}^{f.N}")


def iterated_derivative(f: FiniteFunction, directions: Sequence[FieldVector]) -> FiniteFunction:
    """f_{y_1..y_k}; dense in, dense out; lazy in, lazy out."""
    directions = list(directions)
    _check_directions(f, directions)
    name = f"{f.name}'" * len(directions) if directions else f.name

    if f.is_dense:
        table = f.table
        for y in directions:
            table = derivative_table(table, f.p, f.N, y)
        return FiniteFunction.dense(f.p, f.N, table, name=name,
                                    symmetric=f.symmetric and not directions)

    p, k = f.p, len(directions)
    Y = [y.entries for y in directions]
    subsets: List[tuple] = [s for r in range(k + 1) for s in combinations(range(k), r)]

    def evaluate(X: np.ndarray) -> np.ndarray:
        out = np.zeros(X.shape[0], dtype=np.int64)
        for s in subsets:
            shift = np.zeros(f.N, dtype=np.int64)
            for i in s:
                shift += Y[i]
            values = f.evaluate_many((X + shift) % p)
            sign = 1 if (k - len(s)) % 2 == 0 else -1
            out += sign * values
        return np.mod(out, p)

    return FiniteFunction.lazy(f.p, f.N, evaluate, name=name)
