"""The normal-ordering operator N[...] and its multilinear extension."""
import itertools
import logging
from typing import List, Optional, Sequence, Tuple, Union

from ..errors import NotPureClass
from .operators import OperatorSymbol, SignedTerm, Statistics
from .permutations import sort_with_parity

logger = logging.getLogger(__name__)


def order_bracket(
    factors: Sequence[OperatorSymbol],
    positions: Sequence[int],
    statistics: Statistics,
) -> Tuple[int, Tuple[OperatorSymbol, ...], Tuple[int, ...]]:
    """Sort the factors of one N[...] bracket into canonical order.

    Canonical order is the + block, then undecomposed fields, then the - block;
    inside a block factors sort by (mode, time, original position).

    Returns:
        (sign, ordered factors, ordered positions); the sign is the reordering
        parity for fermions and +1 for bosons
    """
    keyed = [f.sort_key() + (p,) for f, p in zip(factors, positions)]
    order, perm_parity = sort_with_parity(keyed)
    sign = perm_parity if statistics.is_fermionic else 1
    return sign, tuple(factors[i] for i in order), tuple(positions[i] for i in order)


def normal_order(product: Union[Sequence[OperatorSymbol], SignedTerm], statistics: Statistics) -> SignedTerm:
    """Bring a product of pure-class symbols into normal order.

    Accepts either a bare product (positions 0..n-1, coefficient 1) or a
    SignedTerm, whose coefficient, contractions and positions are carried over,
    which makes the operation idempotent on its own output.

    Raises:
        NotPureClass: if a field symbol has not been decomposed
    """
    if isinstance(product, SignedTerm):
        term = product
    else:
        term = SignedTerm(1 + 0j, (), tuple(product), tuple(range(len(product))))

    for symbol in term.normal_factors:
        if not symbol.is_pure:
            raise NotPureClass(f"{symbol} must be decomposed into +/- components first")

    sign, factors, positions = order_bracket(term.normal_factors, term.positions, statistics)
    return SignedTerm(term.coefficient * sign, term.contractions, factors, positions)


def expand_bracket(
    term: SignedTerm,
    statistics: Statistics,
    decompose,
) -> List[SignedTerm]:
    """Multilinear extension: N[F1...Fm] = sum over component choices.

    Each field factor is replaced by its weighted pure components (as
    returned by ``decompose``) and every resulting product is normal ordered.
    Pure factors pass through unchanged.
    """
    choices = []
    for symbol in term.normal_factors:
        choices.append([(1 + 0j, symbol)] if symbol.is_pure else decompose(symbol))

    expanded = []
    for combination in itertools.product(*choices):
        weight = term.coefficient
        symbols = []
        for coefficient, symbol in combination:
            weight *= coefficient
            symbols.append(symbol)
        if weight == 0:
            continue
        expanded.append(normal_order(SignedTerm(weight, term.contractions, tuple(symbols), term.positions), statistics))
    return expanded
