"""Joint law of the power-product sums X_kappa(r_1..r_n) = sum_j prod_i r_i(j)^kappa_i."""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from itertools import product
from typing import List, Tuple

import numpy as np

from field import DomainError, check_prime

from .norms import BATCH, SHARDS

logger = logging.getLogger(__name__)

MAX_LOG_OUTCOMES = 12


@dataclass(frozen=True)
class PowerProductStat:
    n: int
    p: int
    N: int
    kappas: Tuple[Tuple[int, ...], ...]
    outcomes: np.ndarray
    probabilities: np.ndarray
    l1: float
    samples: int

    @property
    def K(self) -> int:
        return len(self.kappas)

    @property
    def total(self) -> float:
        return float(self.probabilities.sum())

    @property
    def std_error(self) -> float:
        """Rough sampling scale of the L1 distance at this sample count."""
        return math.sqrt(min(self.p ** self.K, self.samples) / self.samples)


def nonzero_kappas(n: int, p: int) -> List[Tuple[int, ...]]:
    return [k for k in product(range(p), repeat=n) if any(k)]


def power_product_sums(R: np.ndarray, kappas, p: int) -> np.ndarray:
    """R has shape (batch, n, N); returns (batch, K) values X_kappa mod p."""
    n = R.shape[1]
    powers = [[np.ones_like(R[:, i, :])] for i in range(n)]
    for i in range(n):
        for _ in range(1, p):
            powers[i].append((powers[i][-1] * R[:, i, :]) % p)
    out = np.empty((R.shape[0], len(kappas)), dtype=np.uint8)
    for c, kappa in enumerate(kappas):
        term = np.ones_like(R[:, 0, :])
        for i, e in enumerate(kappa):
            if e:
                term = (term * powers[i][e]) % p
        out[:, c] = term.sum(axis=1) % p
    return out


def _shard(n: int, p: int, N: int, count: int, seed: int, shard: int, batch: int, kappas):
    rng = np.random.default_rng([seed, shard])
    parts = []
    done = 0
    while done < count:
        b = min(batch, count - done)
        R = rng.integers(0, p, size=(b, n, N), dtype=np.int64)
        parts.append(power_product_sums(R, kappas, p))
        done += b
    return np.concatenate(parts) if parts else np.empty((0, len(kappas)), dtype=np.uint8)


def power_product_distribution(
    n: int,
    p: int,
    N: int,
    samples: int,
    seed: int,
    shards: int = SHARDS,
    threads: int = 1,
    batch: int = BATCH,
) -> PowerProductStat:
    check_prime(p)
    if n < 1 or N < 1:
        raise DomainError(f"need n >= 1 and N >= 1, got n={n}, N={N}")
    if n * math.log2(p) > MAX_LOG_OUTCOMES:
        raise DomainError(f"K = {p ** n - 1} power products is too many to tabulate")
    if samples < 1:
        raise DomainError("samples must be at least 1")

    kappas = nonzero_kappas(n, p)
    counts = [samples // shards + (1 if s < samples % shards else 0) for s in range(shards)]
    jobs = [(s, c) for s, c in enumerate(counts) if c]

    def run(job):
        s, c = job
        return _shard(n, p, N, c, seed, s, batch, kappas)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(job) for job in jobs]

    outcomes, hits = np.unique(np.concatenate(parts), axis=0, return_counts=True)
    probabilities = hits / samples
    uniform = float(p) ** -len(kappas)
    unseen = max(1.0 - outcomes.shape[0] * uniform, 0.0)
    l1 = float(np.abs(probabilities - uniform).sum() + unseen)
    logger.debug(f"power products n={n} p={p} N={N}: {outcomes.shape[0]} outcomes, L1={l1:.4f}")
    return PowerProductStat(n, p, N, tuple(kappas), outcomes, probabilities, l1, samples)
