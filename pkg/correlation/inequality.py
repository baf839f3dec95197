import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

import numpy as np

from field import GuardExceeded, character_array
from functions import FiniteFunction, correlation
from gowers import derivative_rows, gowers_norm_exact

logger = logging.getLogger(__name__)

PAIR_BUDGET = 1 << 16
TOLERANCE = 1e-9

Number = Union[Fraction, float]


@dataclass(frozen=True)
class InequalityCheck:
    """<f,g>^{2^{k+1}} <= E over k directions of |<f_y.., g_y..>|^2."""

    order: int
    lhs: Number
    rhs: Number
    transform_rhs: Number

    @property
    def holds(self) -> bool:
        if isinstance(self.lhs, Fraction) and isinstance(self.rhs, Fraction):
            return self.lhs <= self.rhs
        return float(self.lhs) <= float(self.rhs) + TOLERANCE


@dataclass(frozen=True)
class DerivativeInequality:
    first: InequalityCheck
    second: InequalityCheck

    @property
    def holds(self) -> bool:
        return self.first.holds and self.second.holds


def _squared_biases(rows: np.ndarray, p: int):
    """Sum over rows of |sum_x e(row(x))|^2, exact for p = 2."""
    chars = character_array(rows, p)
    if p == 2:
        s = chars.sum(axis=1, dtype=np.int64)
        return int((s * s).sum())
    s = chars.sum(axis=1)
    return float((np.abs(s) ** 2).sum())


def derivative_inequality_check(
    f: FiniteFunction, g: FiniteFunction, budget: int = PAIR_BUDGET
) -> DerivativeInequality:
    f.same_space(g)
    p, N, size = f.p, f.N, f.size
    if size * size > budget:
        raise GuardExceeded("derivative inequality pairs", budget, size * size)
    h = ((f.values() - g.values()) % p).astype(np.uint8)
    directions = np.arange(size, dtype=np.int64)
    first_rows = derivative_rows(h, p, N, directions)

    first = _squared_biases(first_rows, p)
    second = sum(_squared_biases(derivative_rows(row, p, N, directions), p) for row in first_rows)

    bias = correlation(f, g)
    h_fn = FiniteFunction.dense(p, N, h, name=f"{f.name}-{g.name}")
    u2, u3 = gowers_norm_exact(h_fn, 2), gowers_norm_exact(h_fn, 3)
    if p == 2:
        c = bias.exact
        checks = (
            InequalityCheck(1, c ** 4, Fraction(first, size ** 3), u2.exact),
            InequalityCheck(2, c ** 8, Fraction(second, size ** 4), u3.exact),
        )
    else:
        c = abs(bias.value)
        checks = (
            InequalityCheck(1, c ** 4, first / size ** 3, u2.raw_power),
            InequalityCheck(2, c ** 8, second / size ** 4, u3.raw_power),
        )
    out = DerivativeInequality(*checks)
    logger.debug(f"derivative inequality for {f.name}, {g.name}: "
                 f"{float(checks[0].lhs):.4g} <= {float(checks[0].rhs):.4g}, "
                 f"{float(checks[1].lhs):.4g} <= {float(checks[1].rhs):.4g}")
    return out
