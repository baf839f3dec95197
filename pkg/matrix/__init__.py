from .row_matrix import RowMatrix, ColumnExclusion, SetSystem
from .evaluators import MatrixKind, eval_matrix_function
from .oracle import brute_path_oracle
from .expansions import partition_expansion_sym, incomplete_expansion, incomplete_single
from .partitions import set_partitions, ordered_set_systems, compositions

__all__ = [
    'RowMatrix', 'ColumnExclusion', 'SetSystem',
    'MatrixKind', 'eval_matrix_function', 'brute_path_oracle',
    'partition_expansion_sym', 'incomplete_expansion', 'incomplete_single',
    'set_partitions', 'ordered_set_systems', 'compositions',
]
