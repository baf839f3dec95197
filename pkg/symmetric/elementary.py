import logging
from dataclasses import dataclass
from typing import Dict

import numpy as np

from field import DomainError, FieldElement, FieldVector, check_prime, lucas_binomial
from field.lucas import base_p_digits

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymmetricSpec:
    """S_n, the n-th elementary symmetric polynomial on F_p^N."""

    n: int
    p: int
    N: int

    def __post_init__(self):
        check_prime(self.p)
        if self.n < 0 or self.N < 0:
            raise DomainError(f"invalid symmetric spec n={self.n}, N={self.N}")


def eval_symmetric_many(spec: SymmetricSpec, X: np.ndarray) -> np.ndarray:
    """S_n on every row of X via the generating function prod_j (1 + x_j t)."""
    X = np.asarray(X, dtype=np.int64)
    rows = X.shape[0]
    if spec.n > spec.N:
        return np.zeros(rows, dtype=np.int64)
    if spec.p == 2:
        # boolean rows: S_n(x) = C(|x|, n) mod 2
        table = np.array([lucas_binomial(w, spec.n, 2).value for w in range(spec.N + 1)],
                         dtype=np.int64)
        return table[X.sum(axis=1)]
    coeffs = np.zeros((spec.n + 1, rows), dtype=np.int64)
    coeffs[0] = 1
    for j in range(X.shape[1]):
        coeffs[1:] = (coeffs[1:] + coeffs[:-1] * X[:, j]) % spec.p
    return coeffs[spec.n]


def eval_symmetric(spec: SymmetricSpec, x: FieldVector) -> FieldElement:
    if x.p != spec.p or x.N != spec.N:
        raise DomainError(f"point in F_{x.p}^{x.N} does not match {spec}")
    return FieldElement(int(eval_symmetric_many(spec, x.entries[None, :])[0]), spec.p)


def cube_value_lucas(spec: SymmetricSpec, w: int) -> FieldElement:
    """S_n at any 0/1 vector of Hamming weight w, i.e. C(w, n) mod p."""
    if not 0 <= w <= spec.N:
        raise DomainError(f"weight {w} outside [0, {spec.N}]")
    return lucas_binomial(w, spec.n, spec.p)


def digit_dependence(p: int, k: int) -> Dict[str, object]:
    """How S_{p^k} and lower-degree S_m behave on the boolean cube.

    For w in [0, p^(k+1)): C(w, p^k) mod p equals base-p digit k of w, and
    every C(w, m) with m < p^k only sees the digits below k.
    """
    check_prime(p)
    if k < 1:
        raise DomainError("digit dependence needs k >= 1")
    n = p ** k
    span = p ** (k + 1)
    values = [lucas_binomial(w, n, p).value for w in range(span)]
    digits = [base_p_digits(w, p, k + 1)[k] for w in range(span)]
    top_digit_only = all(v == d for v, d in zip(values, digits))
    lower_only = all(
        lucas_binomial(w, m, p).value == lucas_binomial(w % n, m, p).value
        for m in range(n) for w in range(span)
    )
    return {
        "p": p,
        "n": n,
        "values": values,
        "digits": digits,
        "depends_on_digit_only": top_digit_only,
        "lower_degrees_ignore_digit": lower_only,
    }
