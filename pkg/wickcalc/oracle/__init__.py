from .fock import FockMatrix, FockSpace, StateSpec, build_mode_operators, build_state
from .identity import FockOracle, annihilates_state, check_operator_identity

__all__ = [
    'FockMatrix',
    'FockOracle',
    'FockSpace',
    'StateSpec',
    'annihilates_state',
    'build_mode_operators',
    'build_state',
    'check_operator_identity',
]
