"""Permutation parity."""
from typing import Any, Callable, Optional, Sequence, Tuple

from ..errors import InvalidPermutation


def parity(permutation: Sequence[int]) -> int:
    """Return (-1)^(number of inversions) of a permutation of 0..n-1.

    Computed from the cycle decomposition, so it is linear in n.

    Raises:
        InvalidPermutation: if the sequence is not a bijection on 0..n-1
    """
    n = len(permutation)
    seen = [False] * n
    for value in permutation:
        if not isinstance(value, int) or not 0 <= value < n or seen[value]:
            raise InvalidPermutation(f"{list(permutation)} is not a permutation of 0..{n - 1}")
        seen[value] = True

    visited = [False] * n
    cycles = 0
    for start in range(n):
        if visited[start]:
            continue
        cycles += 1
        k = start
        while not visited[k]:
            visited[k] = True
            k = permutation[k]
    return 1 if (n - cycles) % 2 == 0 else -1


def compose(p: Sequence[int], q: Sequence[int]) -> Tuple[int, ...]:
    """(p o q)[i] = p[q[i]]."""
    if len(p) != len(q):
        raise InvalidPermutation("cannot compose permutations of different length")
    return tuple(p[i] for i in q)


def sort_with_parity(items: Sequence[Any], key: Optional[Callable[[Any], Any]] = None) -> Tuple[Tuple[int, ...], int]:
    """Stable argsort of ``items`` together with the parity of that reordering."""
    order = tuple(sorted(range(len(items)), key=(lambda i: key(items[i])) if key else items.__getitem__))
    return order, parity(order)
