from .search import (
    CorrelationResult, EXHAUSTIVE_SPACE, max_correlation_exhaustive,
    max_correlation_naive, max_correlation_spectral, monomial_tables, pack_table, rm_dimension,
    witness_correlation,
)
from .profile import CorrelationProfile, monomial_matrix, sampled_correlation_profile
from .inequality import DerivativeInequality, InequalityCheck, derivative_inequality_check

__all__ = [
    'CorrelationResult', 'EXHAUSTIVE_SPACE', 'max_correlation_exhaustive',
    'max_correlation_naive', 'max_correlation_spectral', 'monomial_tables', 'pack_table',
    'rm_dimension', 'witness_correlation',
    'CorrelationProfile', 'monomial_matrix', 'sampled_correlation_profile',
    'DerivativeInequality', 'InequalityCheck', 'derivative_inequality_check',
]
