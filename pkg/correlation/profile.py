import logging
import math
from dataclasses import dataclass
from typing import Dict

import numpy as np

from field import DomainError, character_array, power_rows
from functions import FiniteFunction, all_points
from symmetric import monomials

logger = logging.getLogger(__name__)

LAZY_POINTS = 1 << 16
POINT_CHUNK = 1 << 13
TRIAL_CHUNK = 512
QUANTILES = (0.5, 0.9, 0.99)


@dataclass(frozen=True)
class CorrelationProfile:
    """Quantiles of |<f, g>| over random g of degree <= d."""

    degree: int
    N: int
    trials: int
    points: int
    exact: bool
    values: np.ndarray
    std_error: float

    @property
    def quantiles(self) -> Dict[str, float]:
        q = np.quantile(self.values, QUANTILES)
        return {"p50": float(q[0]), "p90": float(q[1]), "p99": float(q[2]),
                "max": float(self.values.max())}


def monomial_matrix(X: np.ndarray, basis, p: int) -> np.ndarray:
    """Column m holds the monomial basis[m] evaluated on every row of X."""
    M = np.ones((X.shape[0], len(basis)), dtype=np.int64)
    powers = {}
    for m, exps in enumerate(basis):
        for j, e in enumerate(exps):
            if e:
                if (j, e) not in powers:
                    powers[(j, e)] = power_rows(X[:, j:j + 1], e, p)[:, 0]
                M[:, m] = (M[:, m] * powers[(j, e)]) % p
    return M


def sampled_correlation_profile(
    f: FiniteFunction,
    d: int,
    trials: int,
    seed: int,
    points: int = LAZY_POINTS,
) -> CorrelationProfile:
    """Uniform i.i.d. coefficients on every monomial of degree <= d.

    Correlations are exact when f is dense and fits in `points`; otherwise
    they are averaged over `points` uniform sample points shared by all trials.
    """
    if trials < 1:
        raise DomainError("trials must be at least 1")
    if d < 0:
        raise DomainError(f"degree must be non-negative, got {d}")
    p, N = f.p, f.N
    rng = np.random.default_rng(seed)
    basis = monomials(p, N, d)
    coeffs = rng.integers(0, p, size=(len(basis), trials))
    exact = f.is_dense and f.size <= points
    X = all_points(p, N) if exact else rng.integers(0, p, size=(points, N))
    n_points = X.shape[0]
    fx = f.evaluate_many(X).astype(np.int64)

    sums = np.zeros(trials, dtype=np.complex128 if p > 2 else np.int64)
    for start in range(0, n_points, POINT_CHUNK):
        rows = slice(start, start + POINT_CHUNK)
        M = monomial_matrix(X[rows], basis, p).astype(np.float64)
        for t0 in range(0, trials, TRIAL_CHUNK):
            cols = slice(t0, t0 + TRIAL_CHUNK)
            gx = np.rint(M @ coeffs[:, cols]).astype(np.int64) % p
            chars = character_array((fx[rows, None] - gx) % p, p)
            sums[cols] += chars.sum(axis=0)
    values = np.abs(sums) / n_points
    err = 0.0 if exact else 1.0 / math.sqrt(n_points)
    logger.debug(f"profile of {f.name}, d={d}, N={N}: {trials} trials on {n_points} points")
    return CorrelationProfile(d, N, trials, n_points, exact, values, err)
