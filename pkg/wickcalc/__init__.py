"""Normal ordering, contractions and expectation values by Wick's theorem."""
from .algebra import Expansion, OperatorBase, OperatorSymbol, SignedTerm, Statistics, normal_order, parity
from .dsl import parse, print_expr
from .models import AbstractModel, BcsModel, BecModel, FermiSeaModel, load_model_file
from .oracle import FockSpace, build_state, check_operator_identity
from .time_ordered import n_particle_green, permanent, t_contract, time_order, wick_expand_t
from .wick import ExpansionOptions, enumerate_pair_partitions, lemma3_step, vev, wick_expand

__version__ = "0.1.0"

__all__ = [
    'AbstractModel',
    'BcsModel',
    'BecModel',
    'Expansion',
    'ExpansionOptions',
    'FermiSeaModel',
    'FockSpace',
    'OperatorBase',
    'OperatorSymbol',
    'SignedTerm',
    'Statistics',
    'build_state',
    'check_operator_identity',
    'enumerate_pair_partitions',
    'lemma3_step',
    'load_model_file',
    'n_particle_green',
    'normal_order',
    'parity',
    'parse',
    'permanent',
    'print_expr',
    't_contract',
    'time_order',
    'vev',
    'wick_expand',
    'wick_expand_t',
]
