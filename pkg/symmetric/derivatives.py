"""Iterated derivatives of S_n written as sums of hybrid functionals.

(S_n)_{y_1..y_k}(x) = sum over m and compositions l of n - m into k
positive parts of H(x^(m), y_1^(l_1), ..., y_k^(l_k)).
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Sequence, Tuple

import numpy as np

from field import DomainError, FieldElement, FieldVector, PrimeField
from matrix import ColumnExclusion, MatrixKind, RowMatrix, compositions, eval_matrix_function

from .elementary import SymmetricSpec

logger = logging.getLogger(__name__)

Term = Tuple[int, Tuple[int, ...]]


@dataclass
class DerivativeExpansion:
    spec: SymmetricSpec
    directions: Tuple[FieldVector, ...]
    terms: List[Term]
    _constant_cache: Dict[Tuple[int, ...], int] = field(default_factory=dict, repr=False)

    def _term_value(self, x: FieldVector, m: int, ells: Tuple[int, ...]) -> int:
        if m == 0 and ells in self._constant_cache:
            return self._constant_cache[ells]
        groups = [(x, m)] + list(zip(self.directions, ells))
        M = RowMatrix.from_groups(groups)
        value = eval_matrix_function(MatrixKind.H, M).value
        if m == 0:
            self._constant_cache[ells] = value
        return value

    def evaluate(self, x: FieldVector) -> FieldElement:
        if x.p != self.spec.p or x.N != self.spec.N:
            raise DomainError("evaluation point does not match the expansion")
        total = sum(self._term_value(x, m, ells) for m, ells in self.terms)
        return FieldElement(total % self.spec.p, self.spec.p)

    def evaluate_many(self, X: np.ndarray) -> np.ndarray:
        return np.array(
            [self.evaluate(FieldVector(row, self.spec.p)).value for row in np.asarray(X)],
            dtype=np.int64,
        )


def derivative_expansion(
    spec: SymmetricSpec, directions: Sequence[FieldVector]
) -> DerivativeExpansion:
    k = len(directions)
    for y in directions:
        if y.p != spec.p or y.N != spec.N:
            raise DomainError("direction does not match the symmetric spec")
    terms: List[Term] = []
    if k <= spec.n:
        for m in range(spec.n - k + 1):
            for ells in compositions(spec.n - m, k):
                terms.append((m, ells))
    logger.debug(f"S_{spec.n} with {k} directions expands into {len(terms)} hybrid terms")
    return DerivativeExpansion(spec, tuple(directions), terms)


def monomial_coefficient(
    spec: SymmetricSpec,
    directions: Sequence[FieldVector],
    monomial: Sequence[int],
) -> Dict[str, object]:
    """Coefficient of x_{j_1}..x_{j_m} in (S_n)_{y_1..y_k}.

    The H-form sums H^J(y_1^(l_1)..y_k^(l_k)) over compositions l of n - m.
    When k + m + p > n + 1 every l_t < p, and the S-form
    sum S^J(...) / prod l_t! is computed as well.
    """
    monomial = list(monomial)
    if monomial != sorted(set(monomial)):
        raise DomainError(f"monomial indices must be strictly increasing, got {monomial}")
    k, m, p = len(directions), len(monomial), spec.p
    if m > spec.n - k:
        raise DomainError(f"monomial degree {m} exceeds n - k = {spec.n - k}")
    excluded = ColumnExclusion.of(monomial, spec.N)
    F = PrimeField(p)

    h_form = 0
    s_form = 0
    s_applies = k + m + p > spec.n + 1
    for ells in compositions(spec.n - m, k):
        M = RowMatrix.from_groups(list(zip(directions, ells)), p=p, N=spec.N)
        h_form += eval_matrix_function(MatrixKind.H, M, excluded).value
        if s_applies:
            scale = 1
            for ell in ells:
                scale = scale * F.factorial(ell) % p
            s_value = eval_matrix_function(MatrixKind.S, M, excluded).value
            s_form += s_value * F.inverse(scale)
    return {
        "h_form": FieldElement(h_form % p, p),
        "s_form": FieldElement(s_form % p, p) if s_applies else None,
        "s_form_applies": s_applies,
    }
