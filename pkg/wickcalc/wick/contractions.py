"""Contractions and the extended-contraction sign."""
from typing import TYPE_CHECKING

from ..algebra.operators import OperatorSymbol, Statistics
from ..errors import AlgebraError

if TYPE_CHECKING:
    from ..models.base import ModelDictionary


def contractible(left: OperatorSymbol, right: OperatorSymbol) -> bool:
    """False when the contraction vanishes identically.

    A pure + factor on the left or a pure - factor on the right always gives
    zero, whatever the reference state.
    """
    return left.sign_class <= 0 and right.sign_class >= 0


def contract(a: OperatorSymbol, b: OperatorSymbol, model: "ModelDictionary") -> complex:
    """<gs| a b |gs>, the mixed bracket of a's - part with b's + part."""
    if not contractible(a, b):
        return 0j
    return complex(model.contract(a, b))


def extended_contraction_sign(n_between: int, statistics: Statistics) -> int:
    """Sign for pulling a contraction across ``n_between`` operators."""
    if n_between < 0:
        raise AlgebraError(f"number of operators in between must be non-negative, got {n_between}")
    if Statistics(statistics).is_fermionic and n_between % 2:
        return -1
    return 1
