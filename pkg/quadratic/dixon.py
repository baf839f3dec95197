import logging
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from field import GuardExceeded
from functions import DENSE_CAP, sign_counts

from .forms import AffineSupport, QuadraticForm, b_matrix
from .rank import gf2_rank

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DixonReport:
    """Spectrum shape of (-1)^Q against rank(B) = 2h."""

    h: int
    rank: int
    support_size: int
    magnitude: Fraction
    uniform_magnitude: bool
    affine_support: bool
    support: np.ndarray

    @property
    def passed(self) -> bool:
        return (self.rank == 2 * self.h and self.support_size == 4 ** self.h
                and self.uniform_magnitude and self.magnitude == Fraction(1, 2 ** self.h)
                and self.affine_support)


def is_affine_subspace(indices: np.ndarray, dimension: int) -> bool:
    """True when the index set is a coset of a `dimension`-dimensional subspace of F_2^N."""
    if indices.size != 1 << dimension:
        return False
    shifted = indices ^ indices[0]
    rows = ((shifted[:, None] >> np.arange(64)) & 1).astype(np.uint8)
    return gf2_rank(rows) == dimension


def dixon_spectrum_check(Q: QuadraticForm, cap: int = DENSE_CAP) -> DixonReport:
    size = 1 << Q.N
    if size > cap:
        raise GuardExceeded("dense cap", cap, size)
    rank = gf2_rank(b_matrix(Q))
    h = rank // 2
    counts = sign_counts(Q.table())
    support = np.flatnonzero(counts)
    magnitudes = np.abs(counts[support])
    uniform = bool(np.all(magnitudes == magnitudes[0]))
    magnitude = Fraction(int(magnitudes[0]), size)
    affine = is_affine_subspace(support.astype(np.int64), 2 * h)
    report = DixonReport(h, rank, int(support.size), magnitude, uniform, affine, support)
    logger.debug(f"Dixon N={Q.N}: 2h={rank}, support {support.size}, magnitude {magnitude}")
    return report


def support_within(Q: QuadraticForm, affine: AffineSupport) -> bool:
    """Every non-zero spectral coefficient of (-1)^Q sits in the given affine set."""
    counts = sign_counts(Q.table())
    allowed = affine.indices()
    return all(int(a) in allowed for a in np.flatnonzero(counts))


def magnitude_bound_holds(Q: QuadraticForm, exponent: float) -> bool:
    """max |coefficient| <= 2^{-exponent}."""
    counts = sign_counts(Q.table())
    return float(np.abs(counts).max()) / (1 << Q.N) <= 2.0 ** -exponent + 1e-12
