import time
from math import comb

import pytest

from wickcalc.algebra.operators import SignedTerm, Statistics
from wickcalc.algebra.permutations import parity
from wickcalc.errors import AlgebraError, EmptyProduct, UnknownContraction
from wickcalc.models import AbstractModel, FermiSeaModel
from wickcalc.wick import (
    ExpansionOptions,
    contract,
    double_factorial,
    extended_contraction_sign,
    involution_number,
    lemma3_step,
    wick_expand,
)

from .helpers import abstract_fields, alpha, psi, psi_dagger

FERMI = Statistics.FERMI
BOSE = Statistics.BOSE


def summary(expansion):
    return [(t.contractions, t.positions, t.coefficient) for t in expansion.terms]


class TestGoldenExpansions:
    def test_two_fields(self):
        expansion = wick_expand(abstract_fields(2), AbstractModel(FERMI))
        assert summary(expansion) == [
            ((), (0, 1), 1),
            (((0, 1),), (), 1),
        ]

    def test_three_fields(self):
        expansion = wick_expand(abstract_fields(3), AbstractModel(FERMI))
        assert summary(expansion) == [
            ((), (0, 1, 2), 1),
            (((0, 1),), (2,), 1),
            (((0, 2),), (1,), -1),
            (((1, 2),), (0,), 1),
        ]

    def test_three_bosonic_fields(self):
        expansion = wick_expand(abstract_fields(3), AbstractModel(BOSE))
        assert [t.coefficient for t in expansion.terms] == [1, 1, 1, 1]

    def test_four_fields(self):
        expansion = wick_expand(abstract_fields(4), AbstractModel(FERMI))
        assert len(expansion) == 10
        assert expansion.count_by_contractions() == {0: 1, 1: 6, 2: 3}
        doubles = {t.contractions: t.coefficient for t in expansion.terms_with(2)}
        assert doubles == {
            ((0, 1), (2, 3)): 1,
            ((0, 2), (1, 3)): -1,
            ((0, 3), (1, 2)): 1,
        }
        singles = {t.contractions[0]: (t.positions, t.coefficient) for t in expansion.terms_with(1)}
        assert singles == {
            (0, 1): ((2, 3), 1),
            (0, 2): ((1, 3), -1),
            (0, 3): ((1, 2), 1),
            (1, 2): ((0, 3), 1),
            (1, 3): ((0, 2), -1),
            (2, 3): ((0, 1), 1),
        }


class TestCombinatorics:
    @pytest.mark.parametrize("n", range(1, 9))
    def test_counts_by_contractions(self, n):
        counts = wick_expand(abstract_fields(n), AbstractModel(FERMI)).count_by_contractions()
        expected = {k: comb(n, 2 * k) * double_factorial(2 * k - 1) for k in range(n // 2 + 1)}
        assert counts == expected

    @pytest.mark.parametrize("n", range(1, 11))
    def test_total_is_involution_number(self, n):
        assert len(wick_expand(abstract_fields(n), AbstractModel(FERMI))) == involution_number(n)

    def test_involution_numbers(self):
        assert [involution_number(n) for n in range(7)] == [1, 1, 2, 4, 10, 26, 76]
        assert involution_number(12) == 140152

    @pytest.mark.parametrize("n", range(1, 7))
    def test_signs_are_pairing_parities(self, n):
        for term in wick_expand(abstract_fields(n), AbstractModel(FERMI)).terms:
            flattened = [p for pair in term.contractions for p in pair] + list(term.positions)
            assert term.coefficient == parity(flattened)

    def test_bosonic_signs_are_positive(self):
        expansion = wick_expand(abstract_fields(6), AbstractModel(BOSE))
        assert all(t.coefficient == 1 for t in expansion.terms)

    def test_structural_zeros_are_omitted(self):
        model = AbstractModel(FERMI)
        assert len(wick_expand([alpha(0, create=True), alpha(1)], model)) == 1
        assert len(wick_expand([alpha(0), alpha(1, create=True)], model)) == 2


class TestWickExpand:
    def test_empty_product(self):
        with pytest.raises(EmptyProduct):
            wick_expand([], AbstractModel(FERMI))

    def test_evaluated_two_fields(self):
        a1, a2 = abstract_fields(2)
        model = AbstractModel(FERMI, {(a1, a2): 0.5 - 0.25j})
        expansion = wick_expand([a1, a2], model, ExpansionOptions(symbolic=False))
        assert not expansion.symbolic
        assert expansion.scalar() == 0.5 - 0.25j
        assert [t.normal_factors for t in expansion.terms] == [(), (a1, a2)]

    def test_evaluate_needs_declared_contractions(self):
        with pytest.raises(UnknownContraction):
            wick_expand(abstract_fields(2), AbstractModel(FERMI), ExpansionOptions(symbolic=False))

    def test_symbolic_scalar_needs_evaluation(self):
        with pytest.raises(AlgebraError):
            wick_expand(abstract_fields(2), AbstractModel(FERMI)).scalar()

    def test_expand_fields_gives_pure_factors(self):
        expansion = wick_expand(abstract_fields(3), AbstractModel(FERMI), ExpansionOptions(expand_fields=True))
        assert all(f.is_pure for t in expansion.terms for f in t.normal_factors)
        # N[A1 A2 A3] alone splits into 2^3 pure products
        assert len(expansion.terms_with(0)) == 8


class TestContractions:
    def test_declared_value(self):
        a1, a2 = abstract_fields(2)
        assert contract(a1, a2, AbstractModel(FERMI, {(a1, a2): 2.5j})) == 2.5j

    def test_fermi_sea_values(self):
        model = FermiSeaModel(2, 1)
        assert contract(psi(1), psi_dagger(1), model) == 1
        assert contract(psi(0), psi_dagger(0), model) == 0

    def test_creation_on_the_left_vanishes(self):
        model = FermiSeaModel(2, 1)
        for other in (psi(0), psi_dagger(1), alpha(0), alpha(1, create=True)):
            assert contract(alpha(0, create=True), other, model) == 0

    @pytest.mark.parametrize("n_between, statistics, expected", [
        (0, FERMI, 1),
        (3, FERMI, -1),
        (2, FERMI, 1),
        (7, BOSE, 1),
    ])
    def test_extended_contraction_sign(self, n_between, statistics, expected):
        assert extended_contraction_sign(n_between, statistics) == expected

    def test_extended_contraction_sign_negative(self):
        with pytest.raises(AlgebraError):
            extended_contraction_sign(-1, FERMI)


class TestHeadStep:
    def test_creation_head_only_joins_the_bracket(self):
        model = AbstractModel(FERMI)
        head = alpha(0, create=True)
        tail = SignedTerm(1 + 0j, (), tuple(abstract_fields(3)))
        expansion = lemma3_step(head, tail, model)
        assert len(expansion) == 1
        (term,) = expansion.terms
        assert term.contractions == ()
        assert term.coefficient == 1
        assert term.normal_factors == (head, *abstract_fields(3))
        assert term.positions == (0, 1, 2, 3)

    def test_annihilator_head_with_one_creator(self):
        expansion = lemma3_step(alpha(0), SignedTerm(1 + 0j, (), (alpha(1, create=True),)), AbstractModel(FERMI))
        assert summary(expansion) == [
            ((), (1, 0), -1),
            (((0, 1),), (), 1),
        ]
        assert expansion.terms[0].normal_factors == (alpha(1, create=True), alpha(0))

    def test_annihilator_head_with_two_creators(self):
        tail = SignedTerm(1 + 0j, (), (alpha(1, create=True), alpha(2, create=True)))
        expansion = lemma3_step(alpha(0), tail, AbstractModel(FERMI))
        assert summary(expansion) == [
            ((), (1, 2, 0), 1),
            (((0, 1),), (2,), 1),
            (((0, 2),), (1,), -1),
        ]

    def test_matches_wick_expand_for_two_fields(self):
        a1, a2 = abstract_fields(2)
        model = AbstractModel(FERMI)
        step = lemma3_step(a1, SignedTerm(1 + 0j, (), (a2,)), model)
        assert summary(step) == summary(wick_expand([a1, a2], model))

    @pytest.mark.parametrize("statistics", [FERMI, BOSE])
    def test_repeated_steps_rebuild_the_expansion(self, statistics):
        model = AbstractModel(statistics)
        a1, a2, a3 = abstract_fields(3)
        product = [a1, alpha(0), alpha(1, create=True), a2, a3]
        terms = [SignedTerm(1 + 0j, (), (product[-1],))]
        for head in reversed(product[:-1]):
            terms = [t for tail in terms for t in lemma3_step(head, tail, model).terms]
        folded = {}
        for term in terms:
            folded[term.key] = folded.get(term.key, 0) + term.coefficient
        expected = {term.key: term.coefficient for term in wick_expand(product, model).terms}
        assert folded == expected

    def test_evaluated_step(self):
        model = FermiSeaModel(1, 0)
        expansion = lemma3_step(psi(0), SignedTerm(1 + 0j, (), (psi_dagger(0),)), model,
                                ExpansionOptions(symbolic=False))
        assert not expansion.symbolic
        assert all(term.contractions == () for term in expansion.terms)
        assert expansion.scalar() == 1

    def test_evaluated_step_rejects_formal_contractions(self):
        a1, a2, a3 = abstract_fields(3)
        tail = SignedTerm(1 + 0j, ((0, 1),), (a3,), (2,))
        with pytest.raises(AlgebraError):
            lemma3_step(a1, tail, AbstractModel(FERMI), ExpansionOptions(symbolic=False))


@pytest.mark.slow
def test_twelve_operator_expansion_is_fast():
    model = AbstractModel(FERMI)
    start = time.perf_counter()
    expansion = wick_expand(abstract_fields(12), model)
    elapsed = time.perf_counter() - start
    assert len(expansion) == 140152
    assert elapsed < 5.0
