"""Gowers U^k norms: recursive exact evaluator, direct oracle, Monte Carlo.

The exact evaluator averages ||f_{y_1..y_{k-2}}||_{U^2}^4 over every
direction tuple, with U^2 computed from the character transform. For p = 2
everything is an integer count and the result is an exact Fraction.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterator, List, Optional, Tuple, Union

import numpy as np

from field import DomainError, EstimationError, GuardExceeded, character_array
from functions import FiniteFunction, character_fft, points_of, sign_counts, space_size

logger = logging.getLogger(__name__)

GOWERS_BUDGET = 1 << 35
DIRECT_CAP = 1 << 24
SHARDS = 64
BATCH = 1 << 15
CHUNK_ELEMENTS = 1 << 22


@dataclass(frozen=True)
class GowersEstimate:
    order: int
    raw_power: float
    value: float
    std_error: float = 0.0
    samples: Union[int, str] = "exact"
    exact: Optional[Fraction] = None
    imag_part: float = 0.0

    @property
    def is_exact(self) -> bool:
        return self.samples == "exact"


def _root(raw: float, k: int) -> float:
    return min(1.0, max(float(raw), 0.0) ** (1.0 / 2 ** k))


def _shifted_indices(p: int, N: int, directions: np.ndarray) -> np.ndarray:
    """Row r: index of x + y_r for every point x (directions are point indices)."""
    size = space_size(p, N)
    base = np.arange(size, dtype=np.int64)
    if p == 2:
        return base[None, :] ^ directions[:, None]
    X = points_of(base, p, N)
    Y = points_of(directions, p, N)
    powers = np.array([p ** j for j in range(N)], dtype=np.int64)
    return ((X[None, :, :] + Y[:, None, :]) % p) @ powers


def derivative_rows(table: np.ndarray, p: int, N: int, directions: np.ndarray) -> np.ndarray:
    """Row r: the table of f(x + y_r) - f(x)."""
    shifted = table[_shifted_indices(p, N, directions)]
    if p == 2:
        return shifted ^ table[None, :]
    return (shifted.astype(np.int16) - table[None, :].astype(np.int16)) % p


def _u2_sum(tables: np.ndarray, p: int, N: int):
    """Sum over rows of sum_alpha |coef|^4, scaled by 2^{4N} when p = 2."""
    if p == 2:
        counts = sign_counts(tables)
        if 5 * N <= 62:
            # row sums fit in int64; the batch total may not
            return sum(int(v) for v in (counts ** 4).sum(axis=-1))
        return int((counts.astype(object) ** 4).sum())
    coeffs = character_fft(tables, p, N)
    return float(np.sum(np.abs(coeffs) ** 4))


def orbit_representatives(p: int, N: int) -> Iterator[Tuple[int, int]]:
    """(point index, orbit size) for each S_N-orbit of F_p^N."""
    def parts(total, slots):
        if slots == 1:
            yield (total,)
            return
        for first in range(total + 1):
            for rest in parts(total - first, slots - 1):
                yield (first,) + rest

    for counts in parts(N, p):
        digits: List[int] = []
        for value, c in enumerate(counts):
            digits.extend([value] * c)
        size = math.factorial(N)
        for c in counts:
            size //= math.factorial(c)
        index = sum(d * p ** j for j, d in enumerate(digits))
        yield index, size


def _chunks(p: int, N: int) -> Iterator[np.ndarray]:
    size = space_size(p, N)
    step = max(1, CHUNK_ELEMENTS // (size * max(N, 1)))
    for start in range(0, size, step):
        yield np.arange(start, min(start + step, size), dtype=np.int64)


def _level_sum(table: np.ndarray, depth: int, p: int, N: int):
    if depth == 0:
        return _u2_sum(table[None, :], p, N)
    if depth == 1:
        return sum(_u2_sum(derivative_rows(table, p, N, ys), p, N) for ys in _chunks(p, N))
    total = 0
    for y in range(space_size(p, N)):
        g = derivative_rows(table, p, N, np.array([y], dtype=np.int64))[0]
        total += _level_sum(g, depth - 1, p, N)
    return total


def exact_cost(f: FiniteFunction, k: int) -> int:
    size = space_size(f.p, f.N)
    depth = max(k - 2, 0)
    tuples = size ** depth
    if f.symmetric and depth >= 1:
        orbits = math.comb(f.N + f.p - 1, f.p - 1)
        tuples = tuples // size * orbits
    return tuples * max(f.N, 1) * size


def gowers_norm_exact(f: FiniteFunction, k: int, budget: int = GOWERS_BUDGET) -> GowersEstimate:
    if k < 1:
        raise DomainError(f"Gowers order must be at least 1, got {k}")
    if not f.is_dense:
        raise DomainError("exact Gowers norms need a dense function")
    p, N = f.p, f.N
    cost = exact_cost(f, k)
    if cost > budget:
        raise GuardExceeded("Gowers budget", budget, cost)
    table = f.table

    if k == 1:
        if p == 2:
            c = int(np.sum(1 - 2 * (table.astype(np.int64) & 1)))
            raw = Fraction(c * c, 4 ** N)
            return GowersEstimate(1, float(raw), abs(c) / 2 ** N, exact=raw)
        mean = np.mean(character_array(table, p))
        raw = float(abs(mean) ** 2)
        return GowersEstimate(1, raw, float(abs(mean)))

    depth = k - 2
    if f.symmetric and depth >= 1:
        total = 0
        for rep, weight in orbit_representatives(p, N):
            g = derivative_rows(table, p, N, np.array([rep], dtype=np.int64))[0]
            total += weight * _level_sum(g, depth - 1, p, N)
    else:
        total = _level_sum(table, depth, p, N)

    if p == 2:
        raw = Fraction(int(total), 2 ** (4 * N + N * depth))
        logger.debug(f"U^{k} of {f.name} at N={N}: {raw}")
        return GowersEstimate(k, float(raw), _root(raw, k), exact=raw)
    raw = float(total) / float(p ** (N * depth))
    return GowersEstimate(k, raw, _root(raw, k))


def _subsets(k: int):
    return [s for r in range(k + 1) for s in combinations(range(k), r)]


def gowers_norm_direct(f: FiniteFunction, k: int, cap: int = DIRECT_CAP) -> GowersEstimate:
    """E_{x, y_1..y_k} e(f_{y_1..y_k}(x)) summed straight from the definition."""
    if k < 1:
        raise DomainError(f"Gowers order must be at least 1, got {k}")
    p, N = f.p, f.N
    size = space_size(p, N)
    work = size ** (k + 1)
    if work > cap:
        raise GuardExceeded("direct Gowers enumeration", cap, work)
    table = f.values().astype(np.int64)
    X = points_of(np.arange(size, dtype=np.int64), p, N)
    powers = np.array([p ** j for j in range(N)], dtype=np.int64)
    subsets = _subsets(k)
    step = max(1, CHUNK_ELEMENTS // (size * max(N, 1)))

    total_re, total_im = 0, 0.0
    for start in range(0, size ** k, step):
        tuples = np.arange(start, min(start + step, size ** k), dtype=np.int64)
        dirs = [points_of((tuples // size ** i) % size, p, N) for i in range(k)]
        D = np.zeros((tuples.size, size), dtype=np.int64)
        for s in subsets:
            shift = np.zeros((tuples.size, N), dtype=np.int64)
            for i in s:
                shift += dirs[i]
            idx = ((X[None, :, :] + shift[:, None, :]) % p) @ powers
            sign = 1 if (k - len(s)) % 2 == 0 else -1
            D += sign * table[idx]
        chars = character_array(D % p, p)
        if p == 2:
            total_re += int(chars.sum())
        else:
            total_re += float(chars.real.sum())
            total_im += float(chars.imag.sum())

    if p == 2:
        raw = Fraction(total_re, size ** (k + 1))
        return GowersEstimate(k, float(raw), _root(raw, k), exact=raw)
    raw = total_re / size ** (k + 1)
    return GowersEstimate(k, raw, _root(raw, k), imag_part=total_im / size ** (k + 1))


def _mc_shard(f: FiniteFunction, k: int, count: int, seed: int, shard: int, batch: int):
    rng = np.random.default_rng([seed, shard])
    p, N = f.p, f.N
    subsets = _subsets(k)
    if p == 2:
        acc = [0, 0]
    else:
        acc = [0.0, 0.0, 0.0, 0.0]
    done = 0
    while done < count:
        b = min(batch, count - done)
        X = rng.integers(0, p, size=(b, N))
        Ys = [rng.integers(0, p, size=(b, N)) for _ in range(k)]
        D = np.zeros(b, dtype=np.int64)
        for s in subsets:
            pts = X.copy()
            for i in s:
                pts += Ys[i]
            sign = 1 if (k - len(s)) % 2 == 0 else -1
            D += sign * f.evaluate_many(pts % p)
        chars = character_array(D % p, p)
        if p == 2:
            acc[0] += int(chars.sum())
            acc[1] += b
        else:
            acc[0] += float(chars.real.sum())
            acc[1] += float((chars.real ** 2).sum())
            acc[2] += float(chars.imag.sum())
            acc[3] += float((chars.imag ** 2).sum())
        done += b
    return acc


def _mean_and_error(total, total_sq, n: int) -> Tuple[float, float]:
    mean = total / n
    if n < 2:
        return float(mean), 0.0
    var = max((total_sq - n * mean * mean) / (n - 1), 0.0)
    return float(mean), math.sqrt(var / n)


def gowers_norm_mc(
    f: FiniteFunction,
    k: int,
    samples: int,
    seed: int,
    shards: int = SHARDS,
    threads: int = 1,
    batch: int = BATCH,
) -> GowersEstimate:
    """Sharded estimate of ||f||_{U^k}^{2^k}; shard s draws from stream (seed, s)."""
    if k < 1:
        raise DomainError(f"Gowers order must be at least 1, got {k}")
    if samples < 1:
        raise DomainError("samples must be at least 1")
    counts = [samples // shards + (1 if s < samples % shards else 0) for s in range(shards)]
    jobs = [(s, c) for s, c in enumerate(counts) if c]
    logger.debug(f"MC U^{k} of {f.name}: {samples} samples over {len(jobs)} shards")

    def run(job):
        s, c = job
        return _mc_shard(f, k, c, seed, s, batch)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, jobs))
    else:
        parts = [run(job) for job in jobs]

    if f.p == 2:
        total = sum(part[0] for part in parts)
        raw, err = _mean_and_error(total, samples, samples)
        return GowersEstimate(k, raw, _root(raw, k), err, samples)

    re = sum(part[0] for part in parts)
    re_sq = sum(part[1] for part in parts)
    im = sum(part[2] for part in parts)
    im_sq = sum(part[3] for part in parts)
    raw, err = _mean_and_error(re, re_sq, samples)
    imag, imag_err = _mean_and_error(im, im_sq, samples)
    if abs(imag) > 5 * imag_err + 1e-12:
        raise EstimationError(
            f"imaginary part {imag:.3g} exceeds 5 standard errors ({imag_err:.3g})"
        )
    return GowersEstimate(k, raw, _root(raw, k), err, samples, imag_part=imag)
