"""Time ordering, T-contractions and the time-ordered Wick theorem.

Later times go left. At equal times creation-type operators go left of
annihilation-type ones; remaining ties keep product order. With this rule the
equal-time T-contraction <T psi(t) psi+(t)> equals -<psi+ psi>, the usual
G(t, t+) limit.
"""
import logging
from typing import List, Optional, Sequence, Tuple

from ..algebra.operators import Expansion, OperatorSymbol, SignedTerm, Statistics
from ..algebra.permutations import sort_with_parity
from ..errors import EmptyProduct, MissingTime
from ..wick.contractions import contract
from ..wick.theorem import ExpansionOptions, assemble, fold_product

logger = logging.getLogger(__name__)


def _require_times(product: Sequence[OperatorSymbol]) -> None:
    for position, symbol in enumerate(product):
        if symbol.time is None:
            raise MissingTime(f"operator at position {position + 1} has no time label")


def _time_key(symbol: OperatorSymbol) -> Tuple[float, int]:
    return (-symbol.time, 0 if symbol.is_creation_type else 1)


def time_order_permutation(product: Sequence[OperatorSymbol], statistics: Statistics) -> Tuple[Tuple[int, ...], int]:
    """Positions in time order and the exchange sign of that reordering."""
    _require_times(product)
    order, parity = sort_with_parity(product, key=_time_key)
    return order, parity if Statistics(statistics).is_fermionic else 1


def time_order(product: Sequence[OperatorSymbol], statistics: Statistics) -> SignedTerm:
    """T[product] as a sign times the time-sorted product.

    Raises:
        MissingTime: if any symbol lacks a time label
    """
    order, sign = time_order_permutation(product, statistics)
    return SignedTerm(complex(sign), (), tuple(product[i] for i in order), order)


def t_contract(a: OperatorSymbol, b: OperatorSymbol, model) -> complex:
    """<gs| T a b |gs>.

    Satisfies t_contract(a, b) = +-t_contract(b, a) whenever the two operators
    are not tied under the equal-time rule.
    """
    order, sign = time_order_permutation((a, b), model.statistics)
    x, y = (a, b) if order == (0, 1) else (b, a)
    return sign * contract(x, y, model)


def wick_expand_t(
    product: Sequence[OperatorSymbol],
    model,
    options: Optional[ExpansionOptions] = None,
) -> Expansion:
    """Expand T[product] into normal-ordered terms with T-contractions.

    The product is time sorted, expanded with the static theorem, and every
    contraction is mapped back to original positions; a pair whose order was
    reversed contributes the exchange sign, which makes the static value
    equal to the T-contraction in original order.

    Raises:
        EmptyProduct: if the product has no factors
        MissingTime: if any symbol lacks a time label
    """
    if not product:
        raise EmptyProduct("cannot expand an empty product")
    options = options or ExpansionOptions()
    product = tuple(product)
    for symbol in product:
        model.check_mode(symbol)
    order, order_sign = time_order_permutation(product, model.statistics)
    swap = model.statistics.swap_sign()
    ordered = [product[i] for i in order]

    raw_terms = []
    for sign, pairs, residual in fold_product(ordered, model.statistics):
        sign *= order_sign
        mapped: List[Tuple[int, int]] = []
        for i, j in pairs:
            left, right = order[i], order[j]
            if left > right:
                left, right = right, left
                sign *= swap
            mapped.append((left, right))
        raw_terms.append((sign, tuple(sorted(mapped)), tuple(order[r] for r in residual)))
    logger.debug(f"Time-ordered fold of {len(product)} operators gave {len(raw_terms)} raw terms")
    return assemble(raw_terms, product, model, options, pair_value=t_contract, time_ordered=True)
