from .normal_order import expand_bracket, normal_order, order_bracket
from .operators import Expansion, OperatorBase, OperatorSymbol, SignedTerm, Statistics
from .permutations import compose, parity, sort_with_parity

__all__ = [
    'Expansion',
    'OperatorBase',
    'OperatorSymbol',
    'SignedTerm',
    'Statistics',
    'compose',
    'expand_bracket',
    'normal_order',
    'order_bracket',
    'parity',
    'sort_with_parity',
]
