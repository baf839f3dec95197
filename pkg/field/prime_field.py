import logging
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import DomainError

logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, (int, np.integer)) or not is_prime(int(p)):
        raise DomainError(f"modulus must be prime, got {p}")
    return int(p)


@dataclass(frozen=True)
class PrimeField:
    """The field F_p."""

    p: int

    def __post_init__(self):
        check_prime(self.p)

    def __call__(self, value: int) -> "FieldElement":
        return FieldElement(int(value) % self.p, self.p)

    def elements(self) -> Iterable["FieldElement"]:
        return (FieldElement(v, self.p) for v in range(self.p))

    def inverse(self, value: int) -> int:
        value %= self.p
        if value == 0:
            raise DomainError("zero has no inverse")
        return pow(value, self.p - 2, self.p)

    def factorial(self, n: int) -> int:
        """n! reduced mod p."""
        out = 1
        for t in range(2, n + 1):
            out = (out * t) % self.p
            if out == 0:
                break
        return out

    def sign(self, exponent: int) -> int:
        """(-1)^exponent as an element of F_p."""
        return 1 if exponent % 2 == 0 else self.p - 1


@dataclass(frozen=True)
class FieldElement:
    value: int
    p: int

    def __post_init__(self):
        if not 0 <= self.value < self.p:
            raise DomainError(f"{self.value} is not reduced mod {self.p}")

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise DomainError(f"mixed moduli {self.p} and {other.p}")
            return other.value
        return int(other)

    def __add__(self, other):
        return FieldElement((self.value + self._coerce(other)) % self.p, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement((self.value - self._coerce(other)) % self.p, self.p)

    def __rsub__(self, other):
        return FieldElement((self._coerce(other) - self.value) % self.p, self.p)

    def __mul__(self, other):
        return FieldElement((self.value * self._coerce(other)) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement((-self.value) % self.p, self.p)

    def __pow__(self, exponent: int):
        return FieldElement(pow(self.value, exponent, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, (int, np.integer)):
            return self.value == int(other) % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __int__(self):
        return self.value

    def __index__(self):
        return self.value

    def __repr__(self):
        return f"{self.value} (mod {self.p})"


class FieldVector:
    """Immutable vector in F_p^N.

    Entries live in a read-only int64 array. For p = 2 the vector is also
    available packed into a Python int (`bits`, coordinate j at bit j) so
    pointwise products are ANDs and coordinate sums are popcounts.
    """

    __slots__ = ("p", "entries", "_bits")

    def __init__(self, entries: Sequence[int], p: int):
        self.p = check_prime(p)
        arr = np.asarray(entries, dtype=np.int64).reshape(-1)
        if arr.size and (arr.min() < 0 or arr.max() >= self.p):
            raise DomainError(f"entries must lie in [0, {self.p})")
        arr = arr.copy()
        arr.setflags(write=False)
        self.entries = arr
        self._bits: Optional[int] = None

    @classmethod
    def reduce(cls, values, p: int) -> "FieldVector":
        return cls(np.mod(np.asarray(values, dtype=np.int64), p), p)

    @classmethod
    def zeros(cls, N: int, p: int) -> "FieldVector":
        return cls(np.zeros(N, dtype=np.int64), p)

    @classmethod
    def ones(cls, N: int, p: int) -> "FieldVector":
        return cls(np.ones(N, dtype=np.int64), p)

    @classmethod
    def basis(cls, N: int, j: int, p: int) -> "FieldVector":
        e = np.zeros(N, dtype=np.int64)
        e[j] = 1
        return cls(e, p)

    @classmethod
    def random(cls, N: int, p: int, rng: np.random.Generator) -> "FieldVector":
        return cls(rng.integers(0, p, size=N), p)

    @classmethod
    def from_index(cls, index: int, N: int, p: int) -> "FieldVector":
        """Inverse of `index`: coordinate j is base-p digit j of the index."""
        digits = []
        for _ in range(N):
            index, d = divmod(index, p)
            digits.append(d)
        return cls(digits, p)

    @property
    def N(self) -> int:
        return int(self.entries.size)

    @property
    def bits(self) -> int:
        if self.p != 2:
            raise DomainError("packed bits are only defined for p = 2")
        if self._bits is None:
            packed = 0
            for j in np.flatnonzero(self.entries):
                packed |= 1 << int(j)
            self._bits = packed
        return self._bits

    def index(self) -> int:
        """Lexicographic point index, coordinate 0 least significant."""
        out = 0
        for v in self.entries[::-1]:
            out = out * self.p + int(v)
        return out

    def weight(self) -> int:
        return int(np.count_nonzero(self.entries))

    def total(self) -> FieldElement:
        """<x, 1> = coordinate sum mod p."""
        if self.p == 2:
            return FieldElement(self.bits.bit_count() & 1, 2)
        return FieldElement(int(self.entries.sum()) % self.p, self.p)

    def dot(self, other: "FieldVector") -> FieldElement:
        self._check(other)
        if self.p == 2:
            return FieldElement((self.bits & other.bits).bit_count() & 1, 2)
        return FieldElement(int(self.entries @ other.entries) % self.p, self.p)

    def _check(self, other: "FieldVector"):
        if not isinstance(other, FieldVector):
            raise DomainError(f"expected FieldVector, got {type(other).__name__}")
        if other.p != self.p or other.N != self.N:
            raise DomainError(
                f"shape mismatch: F_{self.p}^{self.N} vs F_{other.p}^{other.N}"
            )

    def __add__(self, other: "FieldVector") -> "FieldVector":
        self._check(other)
        return FieldVector((self.entries + other.entries) % self.p, self.p)

    def __sub__(self, other: "FieldVector") -> "FieldVector":
        self._check(other)
        return FieldVector((self.entries - other.entries) % self.p, self.p)

    def __mul__(self, other):
        if isinstance(other, FieldVector):
            self._check(other)
            return FieldVector((self.entries * other.entries) % self.p, self.p)
        return FieldVector((self.entries * int(other)) % self.p, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return FieldVector((-self.entries) % self.p, self.p)

    def __len__(self):
        return self.N

    def __getitem__(self, j: int) -> FieldElement:
        return FieldElement(int(self.entries[j]), self.p)

    def __iter__(self):
        return (FieldElement(int(v), self.p) for v in self.entries)

    def __eq__(self, other):
        if not isinstance(other, FieldVector):
            return NotImplemented
        return self.p == other.p and np.array_equal(self.entries, other.entries)

    def __hash__(self):
        return hash((self.p, self.entries.tobytes()))

    def tolist(self):
        return [int(v) for v in self.entries]

    def __repr__(self):
        return f"FieldVector({self.tolist()}, p={self.p})"
