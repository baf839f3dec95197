from .norms import (
    GowersEstimate, GOWERS_BUDGET, exact_cost, gowers_norm_exact, gowers_norm_direct,
    gowers_norm_mc, orbit_representatives, derivative_rows,
)
from .fixed_set import ConstraintSet, FixedSetBound, constraint_set, event_constraints, fixed_set_bound_check
from .distributions import PowerProductStat, nonzero_kappas, power_product_distribution, power_product_sums
from .vanishing import (
    ChainBound, EventSample, VanishingReport, REJECTION_CAP, chain_bound_estimate, event_a_mask,
    kernel_fraction, sample_event_a, vanishing_lemma_check, vanishing_sides,
)

__all__ = [
    'GowersEstimate', 'GOWERS_BUDGET', 'exact_cost', 'gowers_norm_exact', 'gowers_norm_direct',
    'gowers_norm_mc', 'orbit_representatives', 'derivative_rows',
    'ConstraintSet', 'FixedSetBound', 'constraint_set', 'event_constraints', 'fixed_set_bound_check',
    'PowerProductStat', 'nonzero_kappas', 'power_product_distribution', 'power_product_sums',
    'ChainBound', 'EventSample', 'VanishingReport', 'REJECTION_CAP', 'chain_bound_estimate',
    'event_a_mask', 'kernel_fraction', 'sample_event_a', 'vanishing_lemma_check', 'vanishing_sides',
]
