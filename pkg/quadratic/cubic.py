"""Cubic forms over F_2 and the affine-support event for their second derivatives.

For g = sum_{i<j<k} a_ijk x_i x_j x_k the second derivative g_{y,z} is affine
with linear part v(i) = <y, G_i z>, i.e. v = G(z) y with G(z) = sum_k z_k G_k.
With A(z) = G(z) + diag(z), A(z) y = v + yz, so v lies in yz + span(y, z, 1)
exactly when A(z) y equals one of the eight vectors c1 y + c2 z + c3 1.
"""

import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from typing import Dict, Optional, Tuple, Union

import numpy as np

from field import DomainError, FieldVector, GuardExceeded
from functions import all_points, coefficient_table, iterated_derivative, materialize
from symmetric import MultiIndexPolynomial

from .forms import AffineSupport, SymmetricBitMatrix, as_bits
from .rank import gf2_rank

logger = logging.getLogger(__name__)

PAIR_CAP = 1 << 24
TABLE_CAP_N = 16
OFFSETS = tuple(product((0, 1), repeat=3))


class CubicTensor:
    """Symmetric 0/1 tensor a[i, j, k], zero unless i, j, k are distinct."""

    def __init__(self, a: np.ndarray):
        a = np.asarray(a, dtype=np.uint8) & 1
        N = a.shape[0]
        if a.shape != (N, N, N):
            raise DomainError(f"expected an N x N x N tensor, got {a.shape}")
        for perm in ((1, 0, 2), (0, 2, 1), (2, 1, 0)):
            if not np.array_equal(a, a.transpose(perm)):
                raise DomainError("cubic tensor must be symmetric")
        idx = np.arange(N)
        if a[idx, idx, :].any() or a[idx, :, idx].any():
            raise DomainError("cubic tensor must vanish on repeated indices")
        a.setflags(write=False)
        self.a = a

    @classmethod
    def from_triples(cls, N: int, triples) -> "CubicTensor":
        a = np.zeros((N, N, N), dtype=np.uint8)
        for t in triples:
            if len(set(t)) != 3:
                raise DomainError(f"cubic monomial {t} needs three distinct variables")
            for i, j, k in set(permutations(t)):
                a[i, j, k] ^= 1
        return cls(a)

    @classmethod
    def zero(cls, N: int) -> "CubicTensor":
        return cls(np.zeros((N, N, N), dtype=np.uint8))

    @classmethod
    def random(cls, N: int, rng: np.random.Generator) -> "CubicTensor":
        triples = [t for t in combinations(range(N), 3) if rng.integers(0, 2)]
        return cls.from_triples(N, triples)

    @classmethod
    def from_polynomial(cls, poly: MultiIndexPolynomial) -> "CubicTensor":
        """Degree-3 part of a boolean polynomial."""
        if poly.p != 2:
            raise DomainError("cubic tensors live over F_2")
        triples = [tuple(j for j, e in enumerate(exps) if e)
                   for exps, _ in poly.iter_terms() if sum(exps) == 3]
        return cls.from_triples(poly.N, triples)

    @property
    def N(self) -> int:
        return self.a.shape[0]

    def triples(self):
        return [t for t in combinations(range(self.N), 3) if self.a[t]]

    def to_polynomial(self) -> MultiIndexPolynomial:
        terms = {}
        for t in self.triples():
            e = [0] * self.N
            for j in t:
                e[j] = 1
            terms[tuple(e)] = 1
        return MultiIndexPolynomial(2, self.N, terms)

    def G(self, i: int) -> SymmetricBitMatrix:
        return SymmetricBitMatrix(self.a[i])

    def G_of(self, z) -> np.ndarray:
        """G(z)[i, j] = sum_k a_ijk z_k."""
        return (self.a.astype(np.int64) @ as_bits(z).astype(np.int64)) % 2

    def A(self, i: int) -> SymmetricBitMatrix:
        """G_i + e_i (x) e_i."""
        m = self.a[i].copy()
        m[i, i] ^= 1
        return SymmetricBitMatrix(m)

    def A_of(self, z) -> SymmetricBitMatrix:
        """A(z) = sum_i z_i A_i = G(z) + diag(z)."""
        return SymmetricBitMatrix(self.G_of(z) ^ np.diag(as_bits(z)))

    def family(self) -> np.ndarray:
        """Stack of A_0..A_{N-1}."""
        stack = self.a.copy()
        idx = np.arange(self.N)
        stack[idx, idx, idx] ^= 1
        return stack

    def v(self, y, z) -> np.ndarray:
        """v_{y,z} = G(z) y."""
        return (self.G_of(z) @ as_bits(y).astype(np.int64)) % 2


@dataclass(frozen=True)
class AFMembership:
    v: FieldVector
    member: bool
    v_from_table: Optional[FieldVector] = None

    @property
    def agree(self) -> bool:
        return self.v_from_table is None or self.v_from_table == self.v


def linear_part_from_table(g: CubicTensor, y: FieldVector, z: FieldVector) -> FieldVector:
    """Coefficients of x_i in the truth-table second derivative of g."""
    f = materialize(g.to_polynomial(), 2, g.N, mode="dense")
    coeffs = coefficient_table(iterated_derivative(f, [y, z]))
    return FieldVector([int(coeffs[1 << i]) for i in range(g.N)], 2)


def af_membership(g: CubicTensor, y: FieldVector, z: FieldVector,
                  table_cap_n: int = TABLE_CAP_N) -> AFMembership:
    if y.p != 2 or z.p != 2:
        raise DomainError("AF membership is defined over F_2")
    if y.N != g.N or z.N != g.N:
        raise DomainError("y and z must match the tensor dimension")
    v = FieldVector(g.v(y, z), 2)
    member = AffineSupport.of(y, z).contains(v)
    from_table = linear_part_from_table(g, y, z) if g.N <= table_cap_n else None
    return AFMembership(v, member, from_table)


def offset_label(c: Tuple[int, int, int]) -> str:
    parts = [name for bit, name in zip(c, ("y", "z", "1")) if bit]
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class AFEventReport:
    N: int
    mode: str
    pairs: int
    frequencies: Dict[str, Union[Fraction, float]]
    union: Union[Fraction, float]
    rank_average: Dict[int, Union[Fraction, float]]
    bound: float
    std_error: float = 0.0
    meta: dict = field(default_factory=dict)

    @property
    def max_frequency(self):
        return max(self.frequencies.values())

    @property
    def holds(self) -> bool:
        if self.mode == "exhaustive":
            for c in OFFSETS:
                if self.frequencies[offset_label(c)] > self.rank_average[c[0]]:
                    return False
            target = Fraction(3, 4) ** self.N
            return all(r <= target for r in self.rank_average.values())
        return float(self.max_frequency) <= self.bound + 3 * self.std_error


def _event_counts(Ys: np.ndarray, Zs: np.ndarray, AY: np.ndarray) -> Tuple[np.ndarray, int]:
    """Per-offset hit counts and the union count for rows of A(z) y."""
    ones = np.ones_like(Ys)
    hits = []
    for c1, c2, c3 in OFFSETS:
        target = (c1 * Ys + c2 * Zs + c3 * ones) % 2
        hits.append(np.all(AY == target, axis=1))
    hits = np.array(hits)
    return hits.sum(axis=1), int(hits.any(axis=0).sum())


def af_event_estimate(
    g: CubicTensor,
    mode: str = "exhaustive",
    samples: int = 10 ** 6,
    seed: int = 0,
    pair_cap: int = PAIR_CAP,
    rank_samples: int = 4096,
) -> AFEventReport:
    """Frequency of A(z) y = c1 y + c2 z + c3 1 for each of the eight offsets.

    Also reports E_z 2^{-rank(A(z) + c1 I)}, which bounds the c1 offsets for
    every z, and the (3/4)^N target.
    """
    N = g.N
    bound = 0.75 ** N
    a = g.a.astype(np.int64)
    if mode == "exhaustive":
        pairs = 1 << (2 * N)
        if pairs > pair_cap:
            raise GuardExceeded("exhaustive (y, z) pairs", pair_cap, pairs)
        points = all_points(2, N)
        counts = np.zeros(len(OFFSETS), dtype=np.int64)
        union = 0
        rank_sum = {0: Fraction(0), 1: Fraction(0)}
        eye = np.eye(N, dtype=np.int64)
        for z in points:
            Az = g.A_of(z).bits.astype(np.int64)
            AY = (points @ Az.T) % 2
            Zs = np.broadcast_to(z, points.shape)
            c, u = _event_counts(points, Zs, AY)
            counts += c
            union += u
            rank_sum[0] += Fraction(1, 1 << gf2_rank(Az))
            rank_sum[1] += Fraction(1, 1 << gf2_rank((Az + eye) % 2))
        freqs = {offset_label(c): Fraction(int(n), pairs) for c, n in zip(OFFSETS, counts)}
        report = AFEventReport(N, mode, pairs, freqs, Fraction(union, pairs),
                               {k: v / (1 << N) for k, v in rank_sum.items()}, bound)
    elif mode == "mc":
        if samples < 1:
            raise DomainError("samples must be at least 1")
        rng = np.random.default_rng(seed)
        counts = np.zeros(len(OFFSETS), dtype=np.int64)
        union = done = 0
        while done < samples:
            b = min(1 << 14, samples - done)
            Ys = rng.integers(0, 2, size=(b, N), dtype=np.int64)
            Zs = rng.integers(0, 2, size=(b, N), dtype=np.int64)
            V = np.einsum("ijk,bj,bk->bi", a, Ys, Zs) % 2
            c, u = _event_counts(Ys, Zs, (V + Ys * Zs) % 2)
            counts += c
            union += u
            done += b
        zs = rng.integers(0, 2, size=(min(rank_samples, samples), N), dtype=np.int64)
        eye = np.eye(N, dtype=np.int64)
        ranks = {0: [], 1: []}
        for z in zs:
            Az = g.A_of(z).bits.astype(np.int64)
            ranks[0].append(2.0 ** -gf2_rank(Az))
            ranks[1].append(2.0 ** -gf2_rank((Az + eye) % 2))
        freqs = {offset_label(c): n / samples for c, n in zip(OFFSETS, counts)}
        top = max(freqs.values())
        err = math.sqrt(max(top * (1 - top), 1.0 / samples) / samples)
        report = AFEventReport(N, mode, samples, freqs, union / samples,
                               {k: float(np.mean(v)) for k, v in ranks.items()}, bound, err)
    else:
        raise DomainError(f"mode must be exhaustive or mc, got {mode!r}")
    logger.debug(f"AF event N={N} ({mode}): max {float(report.max_frequency):.4g}, bound {bound:.4g}")
    return report
