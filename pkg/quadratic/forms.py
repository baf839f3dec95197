"""Boolean quadratic forms and the closed-form second derivative of S_4.

For y, z in F_2^N write Y = <y, 1>, Z = <z, 1>, W = <yz, 1>,
S = S(y, z) = YZ + W, E = C(|y|, 2) and F = C(|z|, 2), all mod 2. Then
(S_4)_{y,z} = sum_{i<j} q_ij x_i x_j + sum_i l_i x_i + c with

    q_ij = S + Z (y_i + y_j) + Y (z_i + z_j) + y_i z_j + y_j z_i
    l_i  = (S + F + Z) y_i + (S + E + Y) z_i + (Z E + Y F + W (Y + Z))
"""

import logging
from dataclasses import dataclass
from itertools import product
from typing import List, Tuple

import numpy as np

from field import DomainError, FieldVector, lucas_binomial
from functions import FiniteFunction, all_points

from .rank import gf2_rank

logger = logging.getLogger(__name__)


def as_bits(v) -> np.ndarray:
    if isinstance(v, FieldVector):
        if v.p != 2:
            raise DomainError(f"expected a vector over F_2, got p = {v.p}")
        v = v.entries
    return np.asarray(v, dtype=np.uint8) & 1


class SymmetricBitMatrix:
    """N x N symmetric matrix over F_2 with an explicit diagonal."""

    __slots__ = ("bits",)

    def __init__(self, bits):
        bits = np.asarray(bits, dtype=np.uint8) & 1
        if bits.ndim != 2 or bits.shape[0] != bits.shape[1]:
            raise DomainError(f"expected a square matrix, got shape {bits.shape}")
        if not np.array_equal(bits, bits.T):
            raise DomainError("matrix is not symmetric")
        bits.setflags(write=False)
        self.bits = bits

    @classmethod
    def zeros(cls, N: int) -> "SymmetricBitMatrix":
        return cls(np.zeros((N, N), dtype=np.uint8))

    @classmethod
    def identity(cls, N: int) -> "SymmetricBitMatrix":
        return cls(np.eye(N, dtype=np.uint8))

    @classmethod
    def diagonal_of(cls, v) -> "SymmetricBitMatrix":
        return cls(np.diag(as_bits(v)))

    @classmethod
    def j_matrix(cls, N: int) -> "SymmetricBitMatrix":
        """All ones off the diagonal, zeros on it."""
        return cls(1 - np.eye(N, dtype=np.uint8))

    @classmethod
    def sym_outer(cls, u, v) -> "SymmetricBitMatrix":
        """u (x) v + v (x) u."""
        u, v = as_bits(u), as_bits(v)
        return cls(np.outer(u, v) ^ np.outer(v, u))

    @property
    def N(self) -> int:
        return self.bits.shape[0]

    @property
    def diagonal(self) -> np.ndarray:
        return np.diag(self.bits).copy()

    def __add__(self, other: "SymmetricBitMatrix") -> "SymmetricBitMatrix":
        return SymmetricBitMatrix(self.bits ^ other.bits)

    def scaled(self, bit: int) -> "SymmetricBitMatrix":
        return self if bit & 1 else SymmetricBitMatrix.zeros(self.N)

    def matvec(self, v) -> np.ndarray:
        return (self.bits.astype(np.int64) @ as_bits(v)) % 2

    def rank(self) -> int:
        return gf2_rank(self)

    def __eq__(self, other):
        return isinstance(other, SymmetricBitMatrix) and np.array_equal(self.bits, other.bits)

    def __hash__(self):
        return hash(self.bits.tobytes())

    def __repr__(self):
        return f"SymmetricBitMatrix(N={self.N})"


@dataclass(frozen=True)
class QuadraticForm:
    """sum_{i<j} q_ij x_i x_j + sum_i l_i x_i + c over F_2; q is strictly upper triangular."""

    q: np.ndarray
    linear: np.ndarray
    c: int = 0

    def __post_init__(self):
        q = np.triu(np.asarray(self.q, dtype=np.uint8) & 1, k=1)
        linear = np.asarray(self.linear, dtype=np.uint8) & 1
        if q.shape != (linear.size, linear.size):
            raise DomainError(f"q has shape {q.shape}, linear part has length {linear.size}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "linear", linear)
        object.__setattr__(self, "c", int(self.c) & 1)

    @classmethod
    def from_terms(cls, N: int, pairs=(), linear=(), c: int = 0) -> "QuadraticForm":
        q = np.zeros((N, N), dtype=np.uint8)
        for i, j in pairs:
            if i == j:
                raise DomainError("quadratic terms need distinct variables")
            q[min(i, j), max(i, j)] ^= 1
        ell = np.zeros(N, dtype=np.uint8)
        for i in linear:
            ell[i] ^= 1
        return cls(q, ell, c)

    @property
    def N(self) -> int:
        return self.linear.size

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        quad = ((X @ self.q.astype(np.int64)) * X).sum(axis=1)
        return (quad + X @ self.linear.astype(np.int64) + self.c) % 2

    def table(self) -> np.ndarray:
        return self.evaluate_many(all_points(2, self.N)).astype(np.uint8)

    def to_function(self, name: str = "Q") -> FiniteFunction:
        return FiniteFunction.dense(2, self.N, self.table(), name=name)

    def __eq__(self, other):
        return (isinstance(other, QuadraticForm) and self.c == other.c
                and np.array_equal(self.q, other.q) and np.array_equal(self.linear, other.linear))


@dataclass(frozen=True)
class AffineSupport:
    """offset + span(basis), by default yz + span(y, z, 1)."""

    offset: FieldVector
    basis: Tuple[FieldVector, ...]

    @classmethod
    def of(cls, y: FieldVector, z: FieldVector) -> "AffineSupport":
        return cls(y * z, (y, z, FieldVector.ones(y.N, 2)))

    def members(self) -> List[FieldVector]:
        out = []
        for coeffs in product((0, 1), repeat=len(self.basis)):
            v = self.offset
            for c, b in zip(coeffs, self.basis):
                if c:
                    v = v + b
            out.append(v)
        return out

    def contains(self, v) -> bool:
        v = FieldVector(as_bits(v), 2)
        return any(v == m for m in self.members())

    def indices(self) -> set:
        return {m.index() for m in self.members()}


def _invariants(y: FieldVector, z: FieldVector):
    if y.p != 2 or z.p != 2:
        raise DomainError("the closed form of (S_4)_{y,z} is for p = 2")
    if y.N != z.N:
        raise DomainError("y and z must have the same length")
    Y, Z = y.weight() & 1, z.weight() & 1
    W = (y * z).weight() & 1
    S = (Y * Z + W) & 1
    E = lucas_binomial(y.weight(), 2, 2).value
    F = lucas_binomial(z.weight(), 2, 2).value
    return Y, Z, W, S, E, F


def s_pair(y: FieldVector, z: FieldVector) -> int:
    """S(y, z) = <y,1><z,1> - <yz,1> mod 2."""
    return _invariants(y, z)[3]


def _s4_constant(y: FieldVector, z: FieldVector) -> int:
    c4 = lambda w: lucas_binomial(w, 4, 2).value
    return (c4((y + z).weight()) + c4(y.weight()) + c4(z.weight())) & 1


def second_derivative_s4(y: FieldVector, z: FieldVector) -> QuadraticForm:
    Y, Z, W, S, E, F = _invariants(y, z)
    yb, zb = as_bits(y), as_bits(z)
    q = (S + Z * (yb[:, None] + yb[None, :]) + Y * (zb[:, None] + zb[None, :])
         + np.outer(yb, zb) + np.outer(zb, yb)) % 2
    const = (Z * E + Y * F + W * (Y + Z)) & 1
    linear = ((S + F + Z) * yb + (S + E + Y) * zb + const) % 2
    return QuadraticForm(q, linear, _s4_constant(y, z))


def linear_part_simplified(y: FieldVector, z: FieldVector) -> np.ndarray:
    """l_i when S(y, z) = 0: (F + Z) y_i + (E + Y) z_i + (Z E + Y F + W (Y + Z))."""
    Y, Z, W, S, E, F = _invariants(y, z)
    if S:
        raise DomainError("the simplified linear part assumes S(y, z) = 0")
    const = (Z * E + Y * F + W * (Y + Z)) & 1
    return (((F + Z) * as_bits(y) + (E + Y) * as_bits(z) + const) % 2).astype(np.uint8)


def b_matrix(Q: QuadraticForm) -> SymmetricBitMatrix:
    """Zero-diagonal symmetric matrix with off-diagonal entries q_ij."""
    return SymmetricBitMatrix(Q.q | Q.q.T)


def b_matrix_structural(y: FieldVector, z: FieldVector) -> SymmetricBitMatrix:
    """S J + Y (z(x)1 + 1(x)z) + Z (y(x)1 + 1(x)y) + (y(x)z + z(x)y)."""
    Y, Z, _, S, _, _ = _invariants(y, z)
    ones = FieldVector.ones(y.N, 2)
    return (SymmetricBitMatrix.j_matrix(y.N).scaled(S)
            + SymmetricBitMatrix.sym_outer(z, ones).scaled(Y)
            + SymmetricBitMatrix.sym_outer(y, ones).scaled(Z)
            + SymmetricBitMatrix.sym_outer(y, z))
