from .rank import pack_rows, gf2_rank, gf2_rank_dense, gf2_rank_many
from .forms import (
    SymmetricBitMatrix, QuadraticForm, AffineSupport, as_bits, s_pair,
    second_derivative_s4, linear_part_simplified, b_matrix, b_matrix_structural,
)
from .dixon import DixonReport, dixon_spectrum_check, is_affine_subspace, support_within, magnitude_bound_holds
from .cubic import (
    CubicTensor, AFMembership, AFEventReport, OFFSETS, af_membership, af_event_estimate,
    linear_part_from_table, offset_label,
)
from .rank_bounds import (
    RankTailReport, CommonZeroReport, MinorChainReport, binomial_tail, matrices_of,
    multilinear_degree, rank_tail_check, common_zero_bound_check, minor_determinant_family,
)

__all__ = [
    'pack_rows', 'gf2_rank', 'gf2_rank_dense', 'gf2_rank_many',
    'SymmetricBitMatrix', 'QuadraticForm', 'AffineSupport', 'as_bits', 's_pair',
    'second_derivative_s4', 'linear_part_simplified', 'b_matrix', 'b_matrix_structural',
    'DixonReport', 'dixon_spectrum_check', 'is_affine_subspace', 'support_within',
    'magnitude_bound_holds',
    'CubicTensor', 'AFMembership', 'AFEventReport', 'OFFSETS', 'af_membership',
    'af_event_estimate', 'linear_part_from_table', 'offset_label',
    'RankTailReport', 'CommonZeroReport', 'MinorChainReport', 'binomial_tail', 'matrices_of',
    'multilinear_degree', 'rank_tail_check', 'common_zero_bound_check',
    'minor_determinant_family',
]
