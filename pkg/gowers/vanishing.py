"""Constrained triples (x, y, z) on which the second derivative of S_{2p} collapses.

When every <x^i y^a z^b> vanishes, (S_{2p})_{y,z}(x) = H(y^(p), z^(p)). Pairs
(y, z) are drawn by rejection on the non-zero (a, b) sums (event A); x is then
drawn uniformly from the kernel of the linear (i = 1) constraints and rejected
on the higher powers.
"""

import logging
from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from field import DomainError, FieldElement, FieldVector, kernel_basis, power_rows
from matrix import RowMatrix, eval_matrix_function
from symmetric import SymmetricSpec, eval_symmetric_many

logger = logging.getLogger(__name__)

REJECTION_CAP = 10 ** 7
SAMPLE_BATCH = 4096


def _check_event_domain(p: int, N: int):
    if p not in (2, 3):
        raise DomainError(f"constrained sampling supports p in (2, 3), got {p}")
    if N < 1 or N % p:
        raise DomainError(f"<1, 1> = N must vanish mod {p}, got N={N}")


def _nonzero_pairs(p: int) -> List[Tuple[int, int]]:
    return [(a, b) for a in range(p) for b in range(p) if a or b]


def event_a_mask(Y: np.ndarray, Z: np.ndarray, p: int) -> np.ndarray:
    """Rows (y, z) with <y^a z^b> = 0 for every non-zero (a, b)."""
    mask = np.ones(Y.shape[0], dtype=bool)
    for a, b in _nonzero_pairs(p):
        sums = (power_rows(Y, a, p) * power_rows(Z, b, p)).sum(axis=1) % p
        mask &= sums == 0
    return mask


@dataclass(frozen=True)
class EventSample:
    p: int
    Y: np.ndarray
    Z: np.ndarray
    attempts: int
    cap_exhausted: bool

    @property
    def accepted(self) -> int:
        return self.Y.shape[0]

    @property
    def frequency(self) -> float:
        return self.accepted / self.attempts if self.attempts else 0.0

    def pairs(self):
        for y, z in zip(self.Y, self.Z):
            yield FieldVector(y, self.p), FieldVector(z, self.p)


def sample_event_a(
    p: int,
    N: int,
    count: int,
    rng: np.random.Generator,
    cap: int = REJECTION_CAP,
    batch: int = SAMPLE_BATCH,
) -> EventSample:
    """Up to `count` pairs in A, stopping after `cap` draws."""
    _check_event_domain(p, N)
    Ys, Zs = [], []
    attempts = accepted = 0
    while accepted < count and attempts < cap:
        b = min(batch, cap - attempts)
        Y = rng.integers(0, p, size=(b, N), dtype=np.int64)
        Z = rng.integers(0, p, size=(b, N), dtype=np.int64)
        hits = np.nonzero(event_a_mask(Y, Z, p))[0]
        need = count - accepted
        if hits.size >= need:
            hits = hits[:need]
            attempts += int(hits[-1]) + 1
        else:
            attempts += b
        Ys.append(Y[hits])
        Zs.append(Z[hits])
        accepted += hits.size
    Y = np.concatenate(Ys) if Ys else np.empty((0, N), dtype=np.int64)
    Z = np.concatenate(Zs) if Zs else np.empty((0, N), dtype=np.int64)
    return EventSample(p, Y, Z, attempts, accepted < count)


def _products(y: np.ndarray, z: np.ndarray, p: int) -> np.ndarray:
    """Rows y^a z^b for all 0 <= a, b < p."""
    rows = [power_rows(y[None, :], a, p)[0] * power_rows(z[None, :], b, p)[0] % p
            for a in range(p) for b in range(p)]
    return np.array(rows, dtype=np.int64)


def _sample_x(
    y: np.ndarray, z: np.ndarray, p: int, rng: np.random.Generator, cap: int
) -> Tuple[Optional[np.ndarray], int]:
    W = _products(y, z, p)
    basis = kernel_basis(W, p)
    attempts = 0
    while attempts < cap:
        b = min(SAMPLE_BATCH, cap - attempts)
        if basis.shape[0]:
            X = rng.integers(0, p, size=(b, basis.shape[0])) @ basis % p
        else:
            X = np.zeros((b, y.size), dtype=np.int64)
        ok = np.ones(b, dtype=bool)
        for i in range(2, p):
            ok &= ~((power_rows(X, i, p) @ W.T) % p).any(axis=1)
        hits = np.nonzero(ok)[0]
        if hits.size:
            attempts += int(hits[0]) + 1
            return X[hits[0]], attempts
        attempts += b
    return None, attempts


def kernel_fraction(
    y: FieldVector, z: FieldVector, rng: np.random.Generator, draws: int = SAMPLE_BATCH
) -> float:
    """Pr_x{<x^i y^a z^b> = 0 for all i >= 1, a, b}: exact for the linear part, sampled above it."""
    p = y.p
    W = _products(y.entries, z.entries, p)
    basis = kernel_basis(W, p)
    linear = float(p) ** -(y.N - basis.shape[0])
    if p == 2 or basis.shape[0] == 0:
        return linear
    X = rng.integers(0, p, size=(draws, basis.shape[0])) @ basis % p
    ok = np.ones(draws, dtype=bool)
    for i in range(2, p):
        ok &= ~((power_rows(X, i, p) @ W.T) % p).any(axis=1)
    return linear * float(ok.mean())


def vanishing_sides(x: FieldVector, y: FieldVector, z: FieldVector) -> Tuple[FieldElement, FieldElement]:
    """((S_{2p})_{y,z}(x), H(y^(p), z^(p)))."""
    p, N = x.p, x.N
    if (y.p, y.N) != (p, N) or (z.p, z.N) != (p, N):
        raise DomainError("x, y and z must share length and modulus")
    spec = SymmetricSpec(2 * p, p, N)
    pts = np.stack([(x + y + z).entries, (x + y).entries, (x + z).entries, x.entries])
    v = eval_symmetric_many(spec, pts)
    lhs = FieldElement(int(v[0] - v[1] - v[2] + v[3]) % p, p)
    rhs = eval_matrix_function("H", RowMatrix.from_groups([(y, p), (z, p)], p=p, N=N))
    return lhs, rhs


@dataclass(frozen=True)
class VanishingReport:
    p: int
    N: int
    requested: int
    trials: int
    failures: int
    attempts: int
    cap_exhausted: bool

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.trials > 0


def vanishing_lemma_check(
    p: int, N: int, trials: int, seed: int, cap: int = REJECTION_CAP
) -> VanishingReport:
    _check_event_domain(p, N)
    if trials < 1:
        raise DomainError("trials must be at least 1")
    rng = np.random.default_rng(seed)
    events = sample_event_a(p, N, trials, rng, cap)
    attempts = events.attempts
    done = failures = 0
    for y, z in events.pairs():
        x, used = _sample_x(y.entries, z.entries, p, rng, cap - attempts)
        attempts += used
        if x is None:
            break
        lhs, rhs = vanishing_sides(FieldVector(x, p), y, z)
        done += 1
        if lhs != rhs:
            failures += 1
            logger.warning(f"❌ identity fails at x={x.tolist()}, y={y}, z={z}: {lhs} != {rhs}")
    exhausted = done < trials
    if exhausted:
        logger.warning(f"rejection cap {cap} reached after {done}/{trials} constrained triples")
    return VanishingReport(p, N, trials, done, failures, attempts, exhausted)


@dataclass(frozen=True)
class ChainBound:
    p: int
    N: int
    pr_a: float
    pr_m: float
    bound: float
    pairs: int
    attempts: int


def chain_bound_estimate(
    p: int, N: int, samples: int, seed: int, pairs: int = 64, draws: int = SAMPLE_BATCH
) -> ChainBound:
    """Pr{A} * E_A[Pr{M}^{2^{p+1}}], a lower bound on ||S_{2p}||_{U^{p+2}}^{2^{p+2}}."""
    _check_event_domain(p, N)
    rng = np.random.default_rng(seed)
    events = sample_event_a(p, N, samples, rng, cap=samples)
    pr_a = events.frequency
    fractions = [kernel_fraction(y, z, rng, draws) for (y, z), _ in zip(events.pairs(), range(pairs))]
    if not fractions:
        return ChainBound(p, N, pr_a, 0.0, 0.0, 0, events.attempts)
    pr_m = float(np.mean(fractions))
    bound = pr_a * float(np.mean(np.array(fractions) ** (2 ** (p + 1))))
    logger.debug(f"chain bound p={p} N={N}: Pr(A)={pr_a:.3g}, Pr(M)={pr_m:.3g}, bound={bound:.3g}")
    return ChainBound(p, N, pr_a, pr_m, bound, len(fractions), events.attempts)
