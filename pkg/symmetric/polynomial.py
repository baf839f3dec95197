import json
import logging
from itertools import combinations, product
from pathlib import Path
from typing import Dict, Iterator, List, Optional, Tuple, Union

import numpy as np

from field import DomainError, FieldVector, FormatError, check_prime

logger = logging.getLogger(__name__)

Exponents = Tuple[int, ...]


def monomials(p: int, N: int, d: int) -> List[Exponents]:
    """Exponent vectors (entries < p) of total degree <= d.

    Ordered by degree, then lexicographically by the variables involved, so
    for p = 2 the list runs 1, x1..xN, x1x2, x1x3, ...
    """
    out: List[Exponents] = []
    if p == 2:
        for deg in range(min(d, N) + 1):
            for support in combinations(range(N), deg):
                e = [0] * N
                for j in support:
                    e[j] = 1
                out.append(tuple(e))
        return out
    for deg in range(d + 1):
        level = []
        for e in product(range(p), repeat=N):
            if sum(e) == deg:
                level.append(tuple(e))
        level.sort(reverse=True)
        out.extend(level)
    return out


class MultiIndexPolynomial:
    """Sparse polynomial over F_p in reduced form (every exponent < p)."""

    def __init__(self, p: int, N: int, terms: Optional[Dict[Exponents, int]] = None):
        self.p = check_prime(p)
        self.N = N
        self.terms: Dict[Exponents, int] = {}
        for exps, coeff in (terms or {}).items():
            exps = tuple(int(e) for e in exps)
            if len(exps) != N:
                raise DomainError(f"exponent vector {exps} has length {len(exps)}, expected {N}")
            if any(e < 0 or e >= p for e in exps):
                raise DomainError(f"exponent vector {exps} is not reduced mod x^{p} - x")
            coeff = int(coeff) % p
            if coeff:
                self.terms[exps] = coeff

    @classmethod
    def zero(cls, p: int, N: int) -> "MultiIndexPolynomial":
        return cls(p, N)

    @classmethod
    def monomial(cls, p: int, N: int, variables: List[int], coeff: int = 1) -> "MultiIndexPolynomial":
        """Product of the given 0-based variables; repeats raise the power."""
        e = [0] * N
        for j in variables:
            e[j] += 1
        if any(x >= p for x in e):
            e = [x if x < p else (x - 1) % (p - 1) + 1 for x in e]
        return cls(p, N, {tuple(e): coeff})

    @classmethod
    def random(cls, p: int, N: int, d: int, rng: np.random.Generator) -> "MultiIndexPolynomial":
        """Uniform i.i.d. coefficients on every monomial of degree <= d."""
        basis = monomials(p, N, d)
        coeffs = rng.integers(0, p, size=len(basis))
        return cls(p, N, {m: int(c) for m, c in zip(basis, coeffs)})

    @classmethod
    def from_dict(cls, data: dict) -> "MultiIndexPolynomial":
        try:
            p, N = int(data["p"]), int(data["N"])
            poly = cls(p, N)
            for term in data["terms"]:
                variables = [int(v) - 1 for v in term["vars"]]
                if any(v < 0 or v >= N for v in variables):
                    raise FormatError(f"variable index out of range in {term}")
                poly = poly + cls.monomial(p, N, variables, int(term.get("coeff", 1)))
            return poly
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, FormatError):
                raise
            raise FormatError(f"malformed polynomial description: {e}") from e

    @classmethod
    def load(cls, path: Union[str, Path]) -> "MultiIndexPolynomial":
        try:
            with open(path, 'r') as f:
                data = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            raise FormatError(f"cannot read polynomial file {path}: {e}") from e
        return cls.from_dict(data)

    def to_dict(self) -> dict:
        terms = []
        for exps, coeff in sorted(self.terms.items()):
            variables = [j + 1 for j, e in enumerate(exps) for _ in range(e)]
            terms.append({"vars": variables, "coeff": coeff})
        return {"p": self.p, "N": self.N, "terms": terms}

    def degree(self) -> int:
        """Total degree; the zero polynomial has degree -1."""
        return max((sum(e) for e in self.terms), default=-1)

    def __add__(self, other: "MultiIndexPolynomial") -> "MultiIndexPolynomial":
        if (other.p, other.N) != (self.p, self.N):
            raise DomainError("polynomials over different spaces")
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = (out.get(e, 0) + c) % self.p
        return MultiIndexPolynomial(self.p, self.N, out)

    def __eq__(self, other):
        if not isinstance(other, MultiIndexPolynomial):
            return NotImplemented
        return (self.p, self.N, self.terms) == (other.p, other.N, other.terms)

    def __repr__(self):
        return f"MultiIndexPolynomial(p={self.p}, N={self.N}, terms={len(self.terms)})"

    def evaluate(self, x: FieldVector) -> int:
        return int(self.evaluate_many(x.entries[None, :])[0])

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        X = np.asarray(X, dtype=np.int64)
        out = np.zeros(X.shape[0], dtype=np.int64)
        for exps, coeff in self.terms.items():
            term = np.full(X.shape[0], coeff, dtype=np.int64)
            for j, e in enumerate(exps):
                for _ in range(e):
                    term = (term * X[:, j]) % self.p
            out = (out + term) % self.p
        return out

    def iter_terms(self) -> Iterator[Tuple[Exponents, int]]:
        return iter(sorted(self.terms.items()))
