"""Exact max |<f, g>| over boolean polynomials g of degree <= d.

Coefficient vectors are walked in reflected Gray-code order. The low `b`
coefficients are expanded once into a table of 2^b packed truth tables; each
outer step XORs one more monomial into the high part and popcounts the whole
block against f.
"""

import logging
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Tuple, Union

import numpy as np

from field import DomainError, GuardExceeded
from functions import FiniteFunction, character_spectrum, correlation
from symmetric import MultiIndexPolynomial, monomials

logger = logging.getLogger(__name__)

EXHAUSTIVE_SPACE = 1 << 28
NAIVE_SPACE = 1 << 16
INNER_BITS = 14
BLOCK_WORDS = 1 << 22
SHARDS = 64


@dataclass(frozen=True)
class CorrelationResult:
    max_abs: float
    method: str
    degree: int
    N: int
    exact: Optional[Fraction] = None
    witness: Optional[MultiIndexPolynomial] = None
    space: Union[int, None] = None
    meta: dict = field(default_factory=dict)


def _require_boolean_dense(f: FiniteFunction):
    if f.p != 2:
        raise DomainError(f"exhaustive search is only defined for p = 2, got p = {f.p}")
    if not f.is_dense:
        raise DomainError("exhaustive search needs a dense function")


def pack_table(table: np.ndarray) -> np.ndarray:
    """Bit j of word j // 64 is table[j]; tail bits are zero."""
    packed = np.packbits(np.asarray(table, dtype=np.uint8) & 1, bitorder="little")
    pad = (-packed.size) % 8
    if pad:
        packed = np.concatenate([packed, np.zeros(pad, dtype=np.uint8)])
    return packed.view("<u8").copy()


def monomial_tables(N: int, d: int) -> Tuple[list, np.ndarray]:
    """Degree <= d monomials and their packed truth tables, one row each."""
    basis = monomials(2, N, d)
    idx = np.arange(1 << N, dtype=np.int64)
    rows = []
    for exps in basis:
        mask = sum(1 << j for j, e in enumerate(exps) if e)
        rows.append(pack_table((idx & mask) == mask))
    return basis, np.array(rows, dtype=np.uint64)


def rm_dimension(N: int, d: int) -> int:
    return sum(math.comb(N, j) for j in range(min(d, N) + 1))


def _witness(t: int, basis: list, N: int) -> MultiIndexPolynomial:
    g = t ^ (t >> 1)
    return MultiIndexPolynomial(2, N, {basis[i]: 1 for i in range(len(basis)) if (g >> i) & 1})


def _walk(F, mono, b, size, start, stop) -> Tuple[int, int]:
    """Best (score, gray index) for outer indices [start, stop); first maximizer wins."""
    words = F.size
    lo = np.zeros((1 << b, words), dtype=np.uint64)
    for i in range(b):
        lo[1 << i: 2 << i] = lo[: 1 << i][::-1] ^ mono[i]
    upper = mono[b:]
    hi = np.zeros(words, dtype=np.uint64)
    g = start ^ (start >> 1)
    for j in range(len(upper)):
        if (g >> j) & 1:
            hi ^= upper[j]

    best, best_t = -1, 0
    for t_hi in range(start, stop):
        if t_hi > start:
            hi ^= upper[(t_hi & -t_hi).bit_length() - 1]
        base = hi ^ F
        if t_hi & 1:
            base = base ^ mono[b - 1]
        dis = np.bitwise_count(lo ^ base).sum(axis=1, dtype=np.int64)
        scores = np.abs(size - 2 * dis)
        i = int(np.argmax(scores))
        if scores[i] > best:
            best, best_t = int(scores[i]), (t_hi << b) | i
    return best, best_t


def max_correlation_exhaustive(
    f: FiniteFunction,
    d: int,
    space_cap: int = EXHAUSTIVE_SPACE,
    shards: int = SHARDS,
    threads: int = 1,
) -> CorrelationResult:
    _require_boolean_dense(f)
    if d < 0:
        raise DomainError(f"degree must be non-negative, got {d}")
    N, size = f.N, f.size
    dim = rm_dimension(N, d)
    space = 1 << dim
    if space > space_cap:
        raise GuardExceeded("exhaustive search space", space_cap, space)

    basis, mono = monomial_tables(N, d)
    F = pack_table(f.table)
    b = min(dim, INNER_BITS, max(1, BLOCK_WORDS.bit_length() - 1 - (F.size - 1).bit_length()))
    outer = 1 << (dim - b)
    shards = max(1, min(shards, outer))
    bounds = [(outer * s // shards, outer * (s + 1) // shards) for s in range(shards)]
    logger.info(f"🔎 Gray walk over 2^{dim} degree-{d} polynomials at N={N} ({shards} shards)")

    def run(bound):
        return _walk(F, mono, b, size, *bound)

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, bounds))
    else:
        parts = [run(bound) for bound in bounds]

    best, best_t = parts[0]
    for score, t in parts[1:]:
        if score > best:
            best, best_t = score, t
    exact = Fraction(best, size)
    witness = _witness(best_t, basis, N)
    logger.debug(f"max |<{f.name}, g>| = {exact} at {witness}")
    return CorrelationResult(float(exact), "exhaustive", d, N, exact, witness, space,
                             {"shards": shards, "inner_bits": b})


def max_correlation_naive(f: FiniteFunction, d: int) -> CorrelationResult:
    """Re-evaluates every candidate from scratch in natural coefficient order."""
    _require_boolean_dense(f)
    N = f.N
    basis = monomials(2, N, d)
    space = 1 << len(basis)
    if space > NAIVE_SPACE:
        raise GuardExceeded("naive search space", NAIVE_SPACE, space)
    best, witness = Fraction(-1), None
    for mask in range(space):
        g = MultiIndexPolynomial(2, N, {basis[i]: 1 for i in range(len(basis)) if (mask >> i) & 1})
        table = FiniteFunction.lazy(2, N, g.evaluate_many).to_dense()
        c = correlation(f, table).magnitude
        if c > best:
            best, witness = c, g
    return CorrelationResult(float(best), "naive", d, N, best, witness, space)


def max_correlation_spectral(f: FiniteFunction, d: int = 1) -> CorrelationResult:
    """Best affine correlation read off the Walsh spectrum."""
    _require_boolean_dense(f)
    if d != 1:
        raise DomainError("the spectral method covers degree 1 only")
    spectrum = character_spectrum(f)
    counts = np.asarray(spectrum.counts, dtype=np.int64)
    alpha = int(np.argmax(np.abs(counts)))
    exact = Fraction(int(abs(counts[alpha])), f.size)
    terms = {}
    for j in range(f.N):
        if (alpha >> j) & 1:
            e = [0] * f.N
            e[j] = 1
            terms[tuple(e)] = 1
    if counts[alpha] < 0:
        terms[(0,) * f.N] = 1
    witness = MultiIndexPolynomial(2, f.N, terms)
    return CorrelationResult(float(exact), "spectral", 1, f.N, exact, witness, f.size)


def witness_correlation(f: FiniteFunction, result: CorrelationResult) -> Fraction:
    g = FiniteFunction.lazy(2, f.N, result.witness.evaluate_many).to_dense()
    return correlation(f, g).magnitude
