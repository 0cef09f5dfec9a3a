"""Operator symbols, signed terms and expansions.

These are the immutable value types every other layer passes around. A
product is a tuple of :class:`OperatorSymbol`; positions in that tuple are the
primary key for contractions, so repeated identical symbols never collide.
"""
from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import TYPE_CHECKING, Dict, Iterator, List, Optional, Sequence, Tuple

from ..errors import AlgebraError, UnknownMode

if TYPE_CHECKING:
    from ..models.base import ModelDictionary

logger = logging.getLogger(__name__)

Pair = Tuple[int, int]


class Statistics(str, Enum):
    """Exchange statistics; upper signs are bosons, lower signs fermions."""
    BOSE = "bose"
    FERMI = "fermi"

    def swap_sign(self) -> int:
        """Sign picked up when two operators are exchanged."""
        return 1 if self is Statistics.BOSE else -1

    @property
    def is_fermionic(self) -> bool:
        return self is Statistics.FERMI


class OperatorBase(str, Enum):
    """Kind of a single factor.

    Field symbols (psi, psi-dagger) have both a ``+`` and a ``-`` component with
    respect to the reference state; quasi symbols (alpha-plus, alpha-minus) are
    pure and carry a definite class.
    """
    FIELD_ANNIHILATE = "field_annihilate"
    FIELD_CREATE = "field_create"
    QUASI_ANNIHILATE = "quasi_annihilate"
    QUASI_CREATE = "quasi_create"

    @property
    def is_field(self) -> bool:
        return self in (OperatorBase.FIELD_ANNIHILATE, OperatorBase.FIELD_CREATE)

    @property
    def is_creation_type(self) -> bool:
        return self in (OperatorBase.FIELD_CREATE, OperatorBase.QUASI_CREATE)

    @property
    def sign_class(self) -> int:
        """+1 for the creation class, -1 for the annihilation class, 0 for fields."""
        if self is OperatorBase.QUASI_CREATE:
            return 1
        if self is OperatorBase.QUASI_ANNIHILATE:
            return -1
        return 0

    def adjoint(self) -> "OperatorBase":
        return _ADJOINT[self]


_ADJOINT = {
    OperatorBase.FIELD_ANNIHILATE: OperatorBase.FIELD_CREATE,
    OperatorBase.FIELD_CREATE: OperatorBase.FIELD_ANNIHILATE,
    OperatorBase.QUASI_ANNIHILATE: OperatorBase.QUASI_CREATE,
    OperatorBase.QUASI_CREATE: OperatorBase.QUASI_ANNIHILATE,
}

# Rank inside a normal-ordered bracket: + block, undecomposed fields, - block.
_CLASS_RANK = {1: 0, 0: 1, -1: 2}


@dataclass(frozen=True, slots=True)
class OperatorSymbol:
    """One creation or annihilation factor.

    Args:
        base: Field or quasi, creation or annihilation
        mode: 0-based index into the model's field table (fields) or
            quasi-mode table (quasi symbols)
        time: Optional time label for time-ordered products
        species: Display family, e.g. ``psi``, ``c``, ``a``, ``A``, ``alpha``
        parent: For the formal components of an abstract field, the base of
            the field they were split from
    """
    base: OperatorBase
    mode: int
    time: Optional[float] = None
    species: str = "psi"
    parent: Optional[OperatorBase] = None

    def __post_init__(self) -> None:
        if self.mode < 0:
            raise UnknownMode(f"mode index must be non-negative, got {self.mode}")

    @property
    def is_pure(self) -> bool:
        return not self.base.is_field

    @property
    def sign_class(self) -> int:
        return self.base.sign_class

    @property
    def is_creation_type(self) -> bool:
        return self.base.is_creation_type

    @property
    def field_key(self) -> Tuple[str, OperatorBase, int]:
        """Identity of the field a symbol belongs to, ignoring time and class."""
        return (self.species, self.parent or self.base, self.mode)

    def at(self, time: Optional[float]) -> "OperatorSymbol":
        return replace(self, time=time)

    def component(self, sign_class: int) -> "OperatorSymbol":
        """Formal ``+`` (sign_class=1) or ``-`` (sign_class=-1) part of a field symbol."""
        base = OperatorBase.QUASI_CREATE if sign_class > 0 else OperatorBase.QUASI_ANNIHILATE
        return replace(self, base=base, parent=self.parent or self.base)

    def sort_key(self) -> tuple:
        time_key = (0, 0.0) if self.time is None else (1, self.time)
        parent = self.parent.value if self.parent else ""
        return (_CLASS_RANK[self.base.sign_class], self.mode, self.species, parent,
                self.base.value, time_key)


@dataclass(frozen=True, slots=True)
class SignedTerm:
    """coefficient x product of contractions x N[normal_factors].

    ``contractions`` holds ordered position pairs ``(i, j)``, ``i < j``, sorted;
    ``positions[k]`` is the original position of ``normal_factors[k]``. Pure
    factors are in normal order; undecomposed field factors stand for the
    normal-ordered product of their components and sit between the two blocks.
    """
    coefficient: complex
    contractions: Tuple[Pair, ...] = ()
    normal_factors: Tuple[OperatorSymbol, ...] = ()
    positions: Tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        if not self.positions and self.normal_factors:
            object.__setattr__(self, "positions", tuple(range(len(self.normal_factors))))
        elif len(self.positions) != len(self.normal_factors):
            raise AlgebraError("positions and normal_factors differ in length")

    @property
    def key(self) -> Tuple[Tuple[Pair, ...], Tuple[OperatorSymbol, ...]]:
        return (self.contractions, self.normal_factors)

    @property
    def order(self) -> int:
        """Number of contractions."""
        return len(self.contractions)

    @property
    def is_scalar(self) -> bool:
        return not self.normal_factors

    def covered_positions(self) -> Tuple[int, ...]:
        return tuple(sorted([p for pair in self.contractions for p in pair] + list(self.positions)))


@dataclass(frozen=True)
class Expansion:
    """Sum of normal-ordered terms representing one operator product.

    In symbolic mode coefficients are the reordering signs only and each
    term's contraction list names formal scalars ``<i j>``; in evaluated mode
    the contraction values are folded into the coefficients and the
    contraction lists are empty.
    """
    terms: Tuple[SignedTerm, ...]
    statistics: Statistics
    original_length: int
    product: Tuple[Optional[OperatorSymbol], ...] = ()
    time_ordered: bool = False
    symbolic: bool = True

    @classmethod
    def from_terms(
        cls,
        terms: Sequence[SignedTerm],
        statistics: Statistics,
        product: Sequence[Optional[OperatorSymbol]],
        *,
        time_ordered: bool = False,
        symbolic: bool = True,
        merge: bool = True,
        drop_zeros: bool = False,
    ) -> "Expansion":
        """Canonicalize: merge equal keys, optionally drop zeros, sort terms."""
        if merge:
            terms = merge_terms(terms)
        if drop_zeros:
            terms = [t for t in terms if t.coefficient != 0]
        if symbolic and not merge:
            ordered = sorted(terms, key=lambda t: (len(t.contractions), t.contractions))
        else:
            ordered = sorted(terms, key=term_sort_key)
        return cls(
            terms=tuple(ordered),
            statistics=statistics,
            original_length=len(product),
            product=tuple(product),
            time_ordered=time_ordered,
            symbolic=symbolic,
        )

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[SignedTerm]:
        return iter(self.terms)

    def count_by_contractions(self) -> Dict[int, int]:
        """Number of terms for each contraction count."""
        return dict(sorted(Counter(t.order for t in self.terms).items()))

    def terms_with(self, n_contractions: int) -> List[SignedTerm]:
        return [t for t in self.terms if t.order == n_contractions]

    def evaluate(self, model: "ModelDictionary") -> "Expansion":
        """Replace every formal contraction by the model's value."""
        if not self.symbolic:
            return self
        if self.time_ordered:
            from ..time_ordered.ordering import t_contract as pair_value
        else:
            from ..wick.contractions import contract as pair_value

        cache: Dict[Pair, complex] = {}
        evaluated = []
        for term in self.terms:
            value = term.coefficient
            for pair in term.contractions:
                if pair not in cache:
                    i, j = pair
                    left, right = self.product[i], self.product[j]
                    if left is None or right is None:
                        raise AlgebraError(f"symbol at position {pair} unknown; cannot evaluate")
                    cache[pair] = pair_value(left, right, model)
                value *= cache[pair]
            evaluated.append(SignedTerm(complex(value), (), term.normal_factors, term.positions))
        logger.debug(f"Evaluated {len(cache)} distinct contractions over {len(self.terms)} terms")
        return Expansion.from_terms(
            evaluated, self.statistics, self.product,
            time_ordered=self.time_ordered, symbolic=False, merge=True, drop_zeros=True,
        )

    def scalar(self) -> complex:
        """Sum of the fully contracted (operator-free) terms of an evaluated expansion."""
        if self.symbolic:
            raise AlgebraError("symbolic expansion: evaluate it against a model first")
        return complex(sum(t.coefficient for t in self.terms if t.is_scalar))


def term_sort_key(term: SignedTerm) -> tuple:
    return (len(term.contractions), term.contractions, len(term.normal_factors),
            tuple(f.sort_key() for f in term.normal_factors), term.positions)


def merge_terms(terms: Sequence[SignedTerm]) -> List[SignedTerm]:
    """Sum the coefficients of terms that share a (contractions, factors) key."""
    merged: Dict[tuple, SignedTerm] = {}
    for term in terms:
        existing = merged.get(term.key)
        if existing is None:
            merged[term.key] = term
        else:
            merged[term.key] = replace(existing, coefficient=existing.coefficient + term.coefficient)
    return list(merged.values())
