from .contractions import contract, contractible, extended_contraction_sign
from .pairings import (
    PairPartition,
    double_factorial,
    enumerate_pair_partitions,
    involution_number,
    pair_sum,
    vev,
)
from .theorem import ExpansionOptions, fold_product, lemma3_step, wick_expand

__all__ = [
    'ExpansionOptions',
    'PairPartition',
    'contract',
    'contractible',
    'double_factorial',
    'enumerate_pair_partitions',
    'extended_contraction_sign',
    'fold_product',
    'involution_number',
    'lemma3_step',
    'pair_sum',
    'vev',
    'wick_expand',
]
