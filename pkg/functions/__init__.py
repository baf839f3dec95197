from .finite_function import (
    FiniteFunction, DENSE_CAP, all_points, points_of, indices_of, space_size,
)
from .truth_table import read_table, write_table
from .materialize import materialize, parse_descriptor
from .derivatives import iterated_derivative, derivative_table, translate_table
from .analysis import Correlation, correlation, correlation_of_values
from .spectrum import Spectrum, character_spectrum, walsh_hadamard, sign_counts, character_fft
from .interpolate import interpolate, algebraic_degree, coefficient_table, moebius

__all__ = [
    'FiniteFunction', 'DENSE_CAP', 'all_points', 'points_of', 'indices_of', 'space_size',
    'read_table', 'write_table',
    'materialize', 'parse_descriptor',
    'iterated_derivative', 'derivative_table', 'translate_table',
    'Correlation', 'correlation', 'correlation_of_values',
    'Spectrum', 'character_spectrum', 'walsh_hadamard', 'sign_counts', 'character_fft',
    'interpolate', 'algebraic_degree', 'coefficient_table', 'moebius',
]
