from .polynomial import MultiIndexPolynomial, monomials
from .elementary import (
    SymmetricSpec, eval_symmetric, eval_symmetric_many, cube_value_lucas, digit_dependence,
)
from .derivatives import DerivativeExpansion, derivative_expansion, monomial_coefficient

__all__ = [
    'MultiIndexPolynomial', 'monomials',
    'SymmetricSpec', 'eval_symmetric', 'eval_symmetric_many', 'cube_value_lucas',
    'digit_dependence',
    'DerivativeExpansion', 'derivative_expansion', 'monomial_coefficient',
]
