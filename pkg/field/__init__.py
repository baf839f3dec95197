from .errors import DomainError, GuardExceeded, FormatError, EstimationError
from .prime_field import PrimeField, FieldElement, FieldVector, check_prime
from .vectors import power_vector, power_rows, product_functional
from .lucas import lucas_binomial, base_p_digits
from .characters import CharacterValue, character, character_array, unit_roots
from .linear import row_reduce, rank_mod_p, kernel_basis

__all__ = [
    'DomainError', 'GuardExceeded', 'FormatError', 'EstimationError',
    'PrimeField', 'FieldElement', 'FieldVector', 'check_prime',
    'power_vector', 'power_rows', 'product_functional',
    'lucas_binomial', 'base_p_digits',
    'CharacterValue', 'character', 'character_array', 'unit_roots',
    'row_reduce', 'rank_mod_p', 'kernel_basis',
]
