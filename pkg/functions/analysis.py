import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from field import unit_roots

from .finite_function import DENSE_CAP, FiniteFunction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Correlation:
    """<f, g> = E_x e(f(x) - g(x)); `exact` is set for p = 2."""

    value: complex
    exact: Optional[Fraction] = None

    @property
    def magnitude(self):
        if self.exact is not None:
            return abs(self.exact)
        return abs(self.value)

    def __abs__(self):
        return float(self.magnitude)


def correlation_of_values(diff: np.ndarray, p: int) -> Correlation:
    """Correlation from the table of f - g mod p over the whole space."""
    size = diff.size
    if p == 2:
        ones = int(np.count_nonzero(diff & 1))
        exact = Fraction(size - 2 * ones, size)
        return Correlation(complex(float(exact)), exact)
    counts = np.bincount(np.asarray(diff, dtype=np.int64), minlength=p)
    return Correlation(complex(np.dot(counts, unit_roots(p)) / size))


def correlation(f: FiniteFunction, g: FiniteFunction, cap: int = DENSE_CAP) -> Correlation:
    f.same_space(g)
    diff = (f.values(cap) - g.values(cap)) % f.p
    return correlation_of_values(diff, f.p)
