"""Pair partitions and reference-state expectation values."""
import itertools
import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterator, List, NamedTuple, Optional, Sequence, Tuple

from ..algebra.operators import OperatorSymbol, Statistics
from ..errors import AlgebraError, OddLength
from ..settings import get_settings
from .contractions import contract

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class PairPartition(NamedTuple):
    """A division of positions into ordered pairs with its exchange sign."""
    pairs: Tuple[Pair, ...]
    sign: int


def double_factorial(n: int) -> int:
    """n!! for n >= -1."""
    result = 1
    while n > 1:
        result *= n
        n -= 2
    return result


def involution_number(n: int) -> int:
    """Number of self-inverse permutations of n elements."""
    previous, current = 1, 1
    for k in range(2, n + 1):
        previous, current = current, current + (k - 1) * previous
    return current


def _walk(positions: Sequence[int]) -> Iterator[Tuple[Tuple[Pair, ...], int]]:
    """Stream (pairs, fermionic sign) over all pairings of ``positions``.

    The smallest unpaired position is paired first, with partners taken in
    increasing order. Pairing it with the partner at index k of the remaining
    pool crosses k positions, so the sign flips when k is odd.
    """
    half = len(positions) // 2
    if half == 0:
        yield (), 1
        return
    pools: List[Optional[List[int]]] = [list(positions)] + [None] * (half - 1)
    choice = [0] * half
    pairs: List[Pair] = [(0, 0)] * half
    signs = [1] * half
    depth = 0
    while depth >= 0:
        pool = pools[depth]
        if len(pool) == 2:
            pairs[depth] = (pool[0], pool[1])
            yield tuple(pairs), signs[depth]
            depth -= 1
            continue
        k = choice[depth]
        if k >= len(pool) - 1:
            choice[depth] = 0
            depth -= 1
            continue
        choice[depth] = k + 1
        pairs[depth] = (pool[0], pool[k + 1])
        signs[depth + 1] = -signs[depth] if k & 1 else signs[depth]
        pools[depth + 1] = pool[1:k + 1] + pool[k + 2:]
        depth += 1


def enumerate_pair_partitions(
    n_positions: int,
    statistics: Statistics = Statistics.FERMI,
) -> Iterator[PairPartition]:
    """Stream all (n_positions - 1)!! pair partitions of 0..n_positions-1.

    Zero positions give the single empty partition.

    Raises:
        OddLength: if n_positions is odd
    """
    if n_positions < 0:
        raise AlgebraError(f"number of positions must be non-negative, got {n_positions}")
    if n_positions % 2:
        raise OddLength(f"cannot pair {n_positions} positions")
    fermionic = Statistics(statistics).is_fermionic
    for pairs, sign in _walk(range(n_positions)):
        yield PairPartition(pairs, sign if fermionic else 1)


def _pairwise_sum(values: Sequence[complex]) -> complex:
    """Sum with a fixed balanced tree, independent of how values were produced."""
    if not values:
        return 0j
    if len(values) == 1:
        return values[0]
    middle = len(values) // 2
    return _pairwise_sum(values[:middle]) + _pairwise_sum(values[middle:])


def _chunk_sum(first: int, partner_index: int, positions: Sequence[int], table, fermionic: bool) -> complex:
    """Pairings of ``positions`` in which ``first`` pairs with positions[partner_index]."""
    partner = positions[partner_index]
    head_value = table[first][partner]
    if fermionic and partner_index % 2:
        head_value = -head_value
    if head_value == 0:
        return 0j
    rest = positions[:partner_index] + positions[partner_index + 1:]
    total = 0j
    for pairs, sign in _walk(rest):
        value = head_value if sign > 0 or not fermionic else -head_value
        for i, j in pairs:
            value *= table[i][j]
        total += value
    return total


def pair_sum(positions: Sequence[int], table, statistics: Statistics, workers: int = 1) -> complex:
    """Signed sum over all pairings of ``positions`` of products of ``table[i][j]``.

    The stream is split by the partner of the first position; chunks are summed
    serially and then reduced with a fixed tree, so the result does not depend
    on ``workers``.
    """
    positions = list(positions)
    if len(positions) % 2:
        return 0j
    if not positions:
        return 1 + 0j
    fermionic = Statistics(statistics).is_fermionic
    first, rest = positions[0], positions[1:]
    jobs = range(len(rest))
    if workers > 1 and len(rest) > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            chunks = list(executor.map(lambda k: _chunk_sum(first, k, rest, table, fermionic), jobs))
    else:
        chunks = [_chunk_sum(first, k, rest, table, fermionic) for k in jobs]
    return _pairwise_sum(chunks)


def contraction_table(
    product: Sequence[OperatorSymbol],
    model,
    pair_value: Callable[[OperatorSymbol, OperatorSymbol, object], complex] = contract,
) -> List[List[complex]]:
    """W[i][j] = value of the contraction of positions i < j."""
    n = len(product)
    table = [[0j] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            table[i][j] = pair_value(product[i], product[j], model)
    return table


def vev(
    product: Sequence[OperatorSymbol],
    model,
    *,
    time_ordered: bool = False,
    workers: Optional[int] = None,
) -> complex:
    """<gs| A_1 ... A_n |gs> as a sum over pair partitions.

    For models with a condensate every field also contributes its c-number
    part; the sum then runs over the subsets of positions replaced by their
    condensate scalars. Without a condensate an odd product gives exactly 0.

    Args:
        product: Operator symbols in product order
        model: Reference-state model
        time_ordered: Use T-contractions, i.e. evaluate <gs|T A_1 ... A_n|gs>
        workers: Threads for the pair sum (defaults to the configured value)
    """
    product = tuple(product)
    for symbol in product:
        model.check_mode(symbol)
    workers = workers or get_settings().pairing_workers
    n = len(product)
    if not model.has_condensate and n % 2:
        return 0j

    if time_ordered:
        from ..time_ordered.ordering import t_contract as pair_value
    else:
        pair_value = contract
    table = contraction_table(product, model, pair_value)
    statistics = model.statistics

    if not model.has_condensate:
        result = pair_sum(range(n), table, statistics, workers)
        logger.debug(f"Pair sum over {n} operators: {result}")
        return complex(result)

    scalars = [model.condensate_part(symbol) for symbol in product]
    carriers = [p for p in range(n) if scalars[p] != 0]
    contributions = []
    for size in range(len(carriers) + 1):
        for chosen in itertools.combinations(carriers, size):
            remainder = [p for p in range(n) if p not in chosen]
            if len(remainder) % 2:
                continue
            weight = 1 + 0j
            for p in chosen:
                weight *= scalars[p]
            contributions.append(weight * pair_sum(remainder, table, statistics, workers))
    return complex(_pairwise_sum(contributions))
