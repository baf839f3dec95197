"""Low-rank probabilities for A(z) + C and the common-zero count that bounds them.

The chain: every principal k x k minor f_I(z) of A(z) + C is prod_{i in I} z_i
plus terms of degree <= k - 1; a family with that shape has at most
sum_{j<k} C(N, j) common zeros; every z with rank(A(z) + C) <= k - 1 is a
common zero.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from typing import Dict, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

from field import DomainError, GuardExceeded
from functions import all_points, moebius
from symmetric import MultiIndexPolynomial

from .cubic import CubicTensor
from .forms import SymmetricBitMatrix
from .rank import gf2_rank_many

logger = logging.getLogger(__name__)

Z_CAP = 1 << 22

Perturbation = Union[MultiIndexPolynomial, np.ndarray]


def binomial_tail(N: int, k: int) -> int:
    return sum(math.comb(N, j) for j in range(min(k, N + 1)))


def _family_stack(family) -> np.ndarray:
    if isinstance(family, CubicTensor):
        return family.family().astype(np.int64)
    stack = np.asarray(family, dtype=np.int64) & 1
    N = stack.shape[0]
    if stack.shape != (N, N, N):
        raise DomainError(f"expected N matrices of size N x N, got {stack.shape}")
    if not np.array_equal(stack, stack.transpose(0, 2, 1)):
        raise DomainError("every A_i must be symmetric")
    return stack


def _check_z_cap(N: int, cap: int):
    if (1 << N) > cap:
        raise GuardExceeded("exhaustive z sweep", cap, 1 << N)


def matrices_of(family, C: SymmetricBitMatrix, Z: np.ndarray) -> np.ndarray:
    """A(z) + C for every row z of Z; A(z) = sum_i z_i A_i."""
    stack = _family_stack(family)
    N = stack.shape[0]
    if C.N != N:
        raise DomainError(f"C is {C.N} x {C.N}, family is {N} x {N}")
    mats = np.tensordot(np.asarray(Z, dtype=np.int64), stack, axes=([1], [0]))
    return (mats + C.bits.astype(np.int64)) % 2


@dataclass(frozen=True)
class RankTailReport:
    N: int
    k: int
    mode: str
    frequency: Union[Fraction, float]
    bound: Fraction
    samples: int
    std_error: float = 0.0

    @property
    def holds(self) -> bool:
        if self.mode == "exhaustive":
            return self.frequency <= self.bound
        return float(self.frequency) <= float(self.bound) + 3 * self.std_error


def rank_tail_check(
    family,
    C: SymmetricBitMatrix,
    k: int,
    mode: str = "exhaustive",
    samples: int = 1 << 14,
    seed: int = 0,
    cap: int = Z_CAP,
) -> RankTailReport:
    """Pr_z{rank(A(z) + C) <= k - 1} against 2^{-N} sum_{i<k} C(N, i)."""
    stack = _family_stack(family)
    N = stack.shape[0]
    if k < 1:
        raise DomainError(f"rank threshold must be at least 1, got {k}")
    bound = Fraction(binomial_tail(N, k), 1 << N)
    if mode == "exhaustive":
        _check_z_cap(N, cap)
        Z = all_points(2, N)
        low = int(np.sum(gf2_rank_many(matrices_of(stack, C, Z)) <= k - 1))
        report = RankTailReport(N, k, mode, Fraction(low, 1 << N), bound, 1 << N)
    elif mode == "mc":
        rng = np.random.default_rng(seed)
        Z = rng.integers(0, 2, size=(samples, N), dtype=np.int64)
        low = int(np.sum(gf2_rank_many(matrices_of(stack, C, Z)) <= k - 1))
        freq = low / samples
        err = math.sqrt(max(freq * (1 - freq), 1.0 / samples) / samples)
        report = RankTailReport(N, k, mode, freq, bound, samples, err)
    else:
        raise DomainError(f"mode must be exhaustive or mc, got {mode!r}")
    logger.debug(f"rank tail N={N} k={k}: {float(report.frequency):.4g} vs {float(bound):.4g}")
    return report


def _perturbation_table(pert: Optional[Perturbation], N: int) -> np.ndarray:
    size = 1 << N
    if pert is None:
        return np.zeros(size, dtype=np.uint8)
    if isinstance(pert, MultiIndexPolynomial):
        if pert.p != 2 or pert.N != N:
            raise DomainError("perturbations must be boolean polynomials in N variables")
        return (pert.evaluate_many(all_points(2, N)) & 1).astype(np.uint8)
    table = np.asarray(pert, dtype=np.uint8) & 1
    if table.shape != (size,):
        raise DomainError(f"perturbation table must have length {size}")
    return table


def multilinear_degree(table: np.ndarray) -> int:
    """Degree of the reduced boolean polynomial of a truth table (-1 for zero)."""
    coeffs = moebius(table)
    support = np.flatnonzero(coeffs)
    if support.size == 0:
        return -1
    return int(np.bitwise_count(support.astype(np.uint64)).max())


def _subset_monomial(I: Sequence[int], N: int) -> np.ndarray:
    mask = sum(1 << i for i in I)
    idx = np.arange(1 << N, dtype=np.int64)
    return ((idx & mask) == mask).astype(np.uint8)


@dataclass(frozen=True)
class CommonZeroReport:
    N: int
    k: int
    zeros: int
    bound: int
    zero_mask: np.ndarray

    @property
    def holds(self) -> bool:
        return self.zeros <= self.bound


def common_zero_bound_check(
    perturbations: Mapping[Tuple[int, ...], Perturbation],
    N: int,
    k: int,
    cap: int = Z_CAP,
) -> CommonZeroReport:
    """Common zeros of f_I = prod_{i in I} x_i + perturbation_I over all k-subsets I.

    Keys may list a subset in any order. Subsets missing from the mapping get
    the zero perturbation.
    """
    if not 0 <= k <= N:
        raise DomainError(f"need 0 <= k <= N, got k={k}, N={N}")
    _check_z_cap(N, cap)
    normalized = {}
    for I, pert in perturbations.items():
        if len(set(I)) != k or not all(0 <= i < N for i in I):
            raise DomainError(f"{I} is not a {k}-subset of range({N})")
        key = tuple(sorted(I))
        if key in normalized:
            raise DomainError(f"subset {key} is given more than once")
        normalized[key] = pert
    zero = np.ones(1 << N, dtype=bool)
    for I in combinations(range(N), k):
        pert = _perturbation_table(normalized.get(I), N)
        if multilinear_degree(pert) > k - 1:
            raise DomainError(f"perturbation of f_{I} has degree above {k - 1}")
        zero &= (_subset_monomial(I, N) ^ pert) == 0
    report = CommonZeroReport(N, k, int(zero.sum()), binomial_tail(N, k), zero)
    logger.debug(f"common zeros N={N} k={k}: {report.zeros} <= {report.bound}")
    return report


def _determinants(mats: np.ndarray, I: Tuple[int, ...]) -> np.ndarray:
    """det over F_2 of the I x I principal submatrix of every matrix in the stack."""
    total = np.zeros(mats.shape[0], dtype=np.int64)
    for perm in permutations(range(len(I))):
        term = np.ones(mats.shape[0], dtype=np.int64)
        for r, c in enumerate(perm):
            term &= mats[:, I[r], I[c]]
        total ^= term
    return total.astype(np.uint8)


@dataclass(frozen=True)
class MinorChainReport:
    N: int
    k: int
    degree_ok: bool
    low_rank: int
    common: CommonZeroReport

    @property
    def holds(self) -> bool:
        return self.degree_ok and self.low_rank <= self.common.zeros <= self.common.bound


def minor_determinant_family(
    family, C: SymmetricBitMatrix, k: int, cap: int = Z_CAP
) -> Tuple[Dict[Tuple[int, ...], np.ndarray], MinorChainReport]:
    """Principal k-minors of A(z) + C as truth tables over z, run through the common-zero bound."""
    stack = _family_stack(family)
    N = stack.shape[0]
    if not 1 <= k <= N:
        raise DomainError(f"need 1 <= k <= N, got k={k}, N={N}")
    _check_z_cap(N, cap)
    mats = matrices_of(stack, C, all_points(2, N))
    minors: Dict[Tuple[int, ...], np.ndarray] = {}
    perturbations: Dict[Tuple[int, ...], Optional[np.ndarray]] = {}
    degree_ok = True
    for I in combinations(range(N), k):
        table = _determinants(mats, I)
        minors[I] = table
        pert = table ^ _subset_monomial(I, N)
        if multilinear_degree(pert) > k - 1:
            degree_ok = False
            logger.warning(f"❌ minor {I} breaks the degree condition")
            pert = None
        perturbations[I] = pert
    low_rank = int(np.sum(gf2_rank_many(mats) <= k - 1))
    if degree_ok:
        common = common_zero_bound_check(perturbations, N, k, cap)
    else:
        zero = np.ones(1 << N, dtype=bool)
        for table in minors.values():
            zero &= table == 0
        common = CommonZeroReport(N, k, int(zero.sum()), binomial_tail(N, k), zero)
    return minors, MinorChainReport(N, k, degree_ok, low_rank, common)
