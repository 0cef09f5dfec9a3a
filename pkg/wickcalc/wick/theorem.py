"""Wick's theorem as a left fold of the single-head contraction step.

The fold works on raw terms ``(sign, pairs, residual)``: ``residual`` lists the
uncontracted positions in the order they are written inside N[...]. Starting
from the last factor, each step puts the next factor (moving left) in front of
every term, once uncontracted and once contracted with each residual factor,
the latter with the sign of the factors it crosses. Residual brackets are
brought into canonical normal order only once, at the end.
"""
import logging
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from ..algebra.normal_order import expand_bracket, order_bracket
from ..algebra.operators import Expansion, OperatorSymbol, SignedTerm, Statistics
from ..errors import AlgebraError, EmptyProduct, ModelError
from .contractions import contract

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]
RawTerm = Tuple[complex, Tuple[Pair, ...], Tuple[int, ...]]
PairValue = Callable[[OperatorSymbol, OperatorSymbol, object], complex]


class ExpansionOptions(BaseModel):
    """How an expansion is produced."""
    symbolic: bool = Field(True, description="Keep contractions as formal scalars <i j>")
    expand_fields: bool = Field(False, description="Split residual fields into pure components")
    drop_zeros: bool = Field(False, description="Drop evaluated terms whose coefficient is exactly 0")


def head_step(
    head: int,
    term: RawTerm,
    head_ok: bool,
    right_ok: Sequence[bool],
    fermionic: bool,
) -> List[RawTerm]:
    """Raw terms of A_head x N[residual]: the bracket with head in front, then
    head contracted with each residual factor.

    ``head`` must be smaller than every position already in ``term``, so the
    new pair can be put first and the pair list stays sorted. Contracting with
    the k-th residual factor crosses k factors.
    """
    sign, pairs, residual = term
    out: List[RawTerm] = [(sign, pairs, (head,) + residual)]
    if not head_ok:
        return out
    for k, partner in enumerate(residual):
        if not right_ok[partner]:
            continue
        flipped = -sign if fermionic and k & 1 else sign
        out.append((flipped, ((head, partner),) + pairs, residual[:k] + residual[k + 1:]))
    return out


def fold_product(product: Sequence[OperatorSymbol], statistics: Statistics) -> List[RawTerm]:
    """All raw terms of the expansion of ``product``, structural zeros omitted."""
    n = len(product)
    if n == 0:
        return [(1, (), ())]
    fermionic = Statistics(statistics).is_fermionic
    right_ok = [symbol.sign_class >= 0 for symbol in product]
    terms: List[RawTerm] = [(1, (), (n - 1,))]
    for head in range(n - 2, -1, -1):
        head_ok = product[head].sign_class <= 0
        folded: List[RawTerm] = []
        for term in terms:
            folded.extend(head_step(head, term, head_ok, right_ok, fermionic))
        terms = folded
    return terms


def assemble(
    raw_terms: Sequence[RawTerm],
    product: Sequence[OperatorSymbol],
    model,
    options: ExpansionOptions,
    pair_value: PairValue = contract,
    time_ordered: bool = False,
) -> Expansion:
    """Turn raw terms over original positions into a canonical Expansion."""
    statistics = model.statistics
    brackets: Dict[Tuple[int, ...], Tuple[int, Tuple[OperatorSymbol, ...], Tuple[int, ...]]] = {}
    values: Dict[Pair, complex] = {}
    terms = []
    for sign, pairs, residual in raw_terms:
        bracket = brackets.get(residual)
        if bracket is None:
            bracket = order_bracket([product[p] for p in residual], residual, statistics)
            brackets[residual] = bracket
        bracket_sign, factors, positions = bracket
        if options.symbolic:
            terms.append(SignedTerm(complex(sign * bracket_sign), pairs, factors, positions))
            continue
        coefficient = complex(sign * bracket_sign)
        for pair in pairs:
            if pair not in values:
                i, j = pair
                values[pair] = pair_value(product[i], product[j], model)
            coefficient *= values[pair]
        terms.append(SignedTerm(coefficient, (), factors, positions))

    merge = not options.symbolic
    if options.expand_fields:
        if model.has_condensate:
            raise ModelError("residual fields of a condensate model carry c-number parts; use bec_decompose")
        expanded = []
        for term in terms:
            if all(f.is_pure for f in term.normal_factors):
                expanded.append(term)
            else:
                expanded.extend(expand_bracket(term, statistics, model.decompose))
        terms = expanded
        merge = True

    logger.debug(f"Assembled {len(terms)} terms from {len(brackets)} distinct residual brackets")
    return Expansion.from_terms(
        terms, statistics, product,
        time_ordered=time_ordered, symbolic=options.symbolic,
        merge=merge, drop_zeros=options.drop_zeros and not options.symbolic,
    )


def wick_expand(
    product: Sequence[OperatorSymbol],
    model,
    options: Optional[ExpansionOptions] = None,
) -> Expansion:
    """Expand a product into normal-ordered terms with all contractions.

    Args:
        product: Operator symbols in product order
        model: Reference-state model (statistics, decomposition, contraction values)
        options: Symbolic or evaluated contractions, field splitting, zero dropping

    Returns:
        The canonical Expansion; in symbolic mode it has I(n) terms minus the
        contractions that vanish identically

    Raises:
        EmptyProduct: if the product has no factors
    """
    if not product:
        raise EmptyProduct("cannot expand an empty product")
    options = options or ExpansionOptions()
    product = tuple(product)
    for symbol in product:
        model.check_mode(symbol)
    raw_terms = fold_product(product, model.statistics)
    logger.debug(f"Folded {len(product)} operators into {len(raw_terms)} raw terms")
    return assemble(raw_terms, product, model, options)


def lemma3_step(
    head: OperatorSymbol,
    tail: SignedTerm,
    model,
    options: Optional[ExpansionOptions] = None,
) -> Expansion:
    """head x N[tail] as N[head tail] plus every single contraction of head.

    The head occupies position 0 and the tail's positions (and any
    contractions it already carries) are shifted up by one. Each contraction
    of head with the k-th factor of the bracket picks up the sign of the k
    factors in between.

    Raises:
        AlgebraError: if an evaluated step is asked for a tail that still
            carries formal contractions
    """
    options = options or ExpansionOptions()
    if not options.symbolic and tail.contractions:
        raise AlgebraError("evaluate the tail's contractions before an evaluated step")
    model.check_mode(head)
    shift_pairs = tuple((i + 1, j + 1) for i, j in tail.contractions)
    tail_positions = tuple(p + 1 for p in tail.positions)
    size = max(tail.covered_positions(), default=-1) + 2
    product: List[Optional[OperatorSymbol]] = [None] * size
    product[0] = head
    for symbol, position in zip(tail.normal_factors, tail_positions):
        product[position] = symbol

    right_ok = [symbol is not None and symbol.sign_class >= 0 for symbol in product]
    raw = head_step(0, (tail.coefficient, shift_pairs, tail_positions), head.sign_class <= 0, right_ok,
                    model.statistics.is_fermionic)
    return assemble(raw, product, model, options)
