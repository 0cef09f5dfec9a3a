from .green import PropagatorMatrix, green_by_pairings, n_particle_green, propagator_matrix
from .ordering import t_contract, time_order, wick_expand_t
from .permanent import permanent

__all__ = [
    'PropagatorMatrix',
    'green_by_pairings',
    'n_particle_green',
    'permanent',
    'propagator_matrix',
    't_contract',
    'time_order',
    'wick_expand_t',
]
