import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from field import DomainError, FieldVector, power_rows, power_vector
from functions import FiniteFunction, all_points

from .norms import GOWERS_BUDGET, gowers_norm_exact

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ConstraintSet:
    """{x : <x^i, y> = target for every (i, y)}.

    Exponent-0 constraints do not involve x; the one that matters, <1, 1> = N,
    is carried by `constant_constraint` and empties the set unless p | N.
    """

    p: int
    N: int
    pairs: Tuple[Tuple[int, FieldVector], ...]
    targets: Optional[Tuple[int, ...]] = None
    constant_constraint: bool = False

    def __post_init__(self):
        for i, y in self.pairs:
            if not 1 <= i < self.p:
                raise DomainError(f"constraint exponent {i} outside [1, {self.p})")
            if y.p != self.p or y.N != self.N:
                raise DomainError(f"constraint vector {y} does not live in F_{self.p}^{self.N}")
        if self.targets is not None and len(self.targets) != len(self.pairs):
            raise DomainError("one target per constraint")

    def target(self, r: int) -> int:
        return 0 if self.targets is None else self.targets[r] % self.p

    def contains_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        if self.constant_constraint and self.N % self.p:
            return np.zeros(X.shape[0], dtype=bool)
        mask = np.ones(X.shape[0], dtype=bool)
        for r, (i, y) in enumerate(self.pairs):
            mask &= (power_rows(X, i, self.p) @ y.entries) % self.p == self.target(r)
        return mask

    def contains(self, x: FieldVector) -> bool:
        return bool(self.contains_many(x.entries[None, :])[0])

    def mask(self) -> np.ndarray:
        return self.contains_many(all_points(self.p, self.N))


def event_constraints(y: FieldVector, z: FieldVector) -> ConstraintSet:
    """<x^i, y^a z^b> = 0 for 1 <= i < p and all 0 <= a, b < p."""
    if y.p != z.p or y.N != z.N:
        raise DomainError("y and z must share length and modulus")
    p = y.p
    pairs: List[Tuple[int, FieldVector]] = []
    for a in range(p):
        for b in range(p):
            w = power_vector(y, a) * power_vector(z, b)
            pairs.extend((i, w) for i in range(1, p))
    return ConstraintSet(p, y.N, tuple(pairs), constant_constraint=True)


@dataclass(frozen=True)
class FixedSetBound:
    prob: Fraction
    norm: float
    holds: bool
    size: int
    value: int

    @property
    def threshold(self) -> float:
        return float(self.prob) ** 2


def fixed_set_bound_check(
    f: FiniteFunction, constraints: ConstraintSet, budget: int = GOWERS_BUDGET
) -> FixedSetBound:
    """||f||_{U^p} against (|M| / p^N)^2 for f constant on M."""
    if (f.p, f.N) != (constraints.p, constraints.N):
        raise DomainError("function and constraint set live in different spaces")
    mask = constraints.mask()
    size = int(mask.sum())
    if size == 0:
        raise DomainError("constraint set is empty")
    values = np.unique(f.values()[mask])
    if values.size != 1:
        raise DomainError(f"{f.name} takes {values.size} values on the constraint set")
    prob = Fraction(size, f.size)
    norm = gowers_norm_exact(f, f.p, budget).value
    holds = norm > float(prob) ** 2
    logger.debug(f"fixed set of {f.name}: |M|/p^N = {prob}, U^{f.p} = {norm:.6f}, holds={holds}")
    return FixedSetBound(prob, norm, holds, size, int(values[0]))


def constraint_set(p: int, N: int, vectors: Sequence[FieldVector], exponent: int = 1) -> ConstraintSet:
    return ConstraintSet(p, N, tuple((exponent, y) for y in vectors))
