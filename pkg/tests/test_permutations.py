import itertools

import pytest

from wickcalc.algebra.permutations import compose, parity, sort_with_parity
from wickcalc.errors import InvalidPermutation

from .helpers import inversion_parity


@pytest.mark.parametrize("permutation, expected", [
    ([0, 1, 2], 1),
    ([1, 0], -1),
    ([1, 2, 0], 1),
    ([], 1),
    ([3, 2, 1, 0], 1),
    ([0, 2, 1, 3], -1),
])
def test_parity_examples(permutation, expected):
    assert parity(permutation) == expected


@pytest.mark.parametrize("bad", [[0, 0], [1, 2], [0, -1], [0, 1.5]])
def test_parity_rejects_non_bijections(bad):
    with pytest.raises(InvalidPermutation):
        parity(bad)


def test_parity_is_multiplicative(rng):
    for _ in range(200):
        n = int(rng.integers(1, 9))
        p = [int(x) for x in rng.permutation(n)]
        q = [int(x) for x in rng.permutation(n)]
        assert parity(compose(p, q)) == parity(p) * parity(q)


def test_parity_matches_inversion_count():
    for n in range(6):
        for permutation in itertools.permutations(range(n)):
            assert parity(permutation) == inversion_parity(permutation)


def test_sort_with_parity():
    order, sign = sort_with_parity([3, 1, 2])
    assert order == (1, 2, 0)
    assert sign == 1

    order, sign = sort_with_parity(["b", "a"], key=str)
    assert order == (1, 0)
    assert sign == -1


def test_compose_length_mismatch():
    with pytest.raises(InvalidPermutation):
        compose([0, 1], [0])
