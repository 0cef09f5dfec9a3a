"""Operator-identity checks on the Fock oracle."""
import itertools
import logging
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.operators import Expansion, OperatorBase, OperatorSymbol, SignedTerm
from ..errors import BadStateSpec, OracleError, UnknownSymbol
from ..time_ordered.ordering import time_order
from .fock import FockSpace, StateSpec, build_state

logger = logging.getLogger(__name__)


class FockOracle:
    """Matrix images of a linear model's operators on a Fock space.

    Bare fields are psi_i = sum_m U[i, m] c_m; quasi operators come from the
    model's (P, Q) expansion; time labels evolve a matrix with
    H = sum_a e_a alpha_a^+ alpha_a^-, built independently of the phases the
    model assigns.
    """

    def __init__(self, space: FockSpace, model):
        if getattr(model, "quasi_mode_expansion", None) is None:
            raise UnknownSymbol(f"the {model.name} model has no matrix representation")
        if model.has_condensate:
            raise OracleError("c-number condensate parts have no exact Fock-space image")
        if model.n_modes != space.n_modes:
            raise BadStateSpec(f"model has {model.n_modes} modes, space has {space.n_modes}")
        if model.statistics is not space.statistics:
            raise BadStateSpec("model and space statistics differ")
        self.space = space
        self.model = model
        self._annihilators = [a.matrix for a, _ in space.mode_operators]
        self._creators = [c.matrix for _, c in space.mode_operators]
        self._cache: Dict[OperatorSymbol, np.ndarray] = {}
        self._component_cache: Dict[OperatorSymbol, Tuple[np.ndarray, np.ndarray]] = {}

    @cached_property
    def quasi_annihilators(self) -> List[np.ndarray]:
        P, Q = self.model.quasi_mode_expansion()
        ops = []
        for a in range(self.model.n_quasi):
            matrix = np.zeros((self.space.dimension, self.space.dimension), dtype=complex)
            for m in range(self.space.n_modes):
                if P[a, m] != 0:
                    matrix += P[a, m] * self._annihilators[m]
                if Q[a, m] != 0:
                    matrix += Q[a, m] * self._creators[m]
            ops.append(matrix)
        return ops

    def bare(self, base: OperatorBase, mode: int) -> np.ndarray:
        if mode >= self.space.n_modes:
            raise UnknownSymbol(f"mode {mode + 1} outside the {self.space.n_modes}-mode space")
        row = self.model.overlaps[mode]
        matrix = sum(row[m] * self._annihilators[m] for m in range(self.space.n_modes) if row[m] != 0)
        if isinstance(matrix, int):
            matrix = np.zeros((self.space.dimension, self.space.dimension), dtype=complex)
        return matrix if base is OperatorBase.FIELD_ANNIHILATE else matrix.conj().T

    def quasi(self, base: OperatorBase, mode: int) -> np.ndarray:
        if mode >= len(self.quasi_annihilators):
            raise UnknownSymbol(f"quasi mode {mode + 1} outside the model")
        matrix = self.quasi_annihilators[mode]
        return matrix if base is OperatorBase.QUASI_ANNIHILATE else matrix.conj().T

    @cached_property
    def hamiltonian(self) -> np.ndarray:
        H = np.zeros((self.space.dimension, self.space.dimension), dtype=complex)
        for energy, a in zip(self.model.quasi_energies, self.quasi_annihilators):
            if energy:
                H += energy * (a.conj().T @ a)
        return H

    @cached_property
    def _eigensystem(self) -> Tuple[np.ndarray, np.ndarray]:
        return np.linalg.eigh(self.hamiltonian)

    def evolve(self, matrix: np.ndarray, time: float) -> np.ndarray:
        """Heisenberg picture: exp(iHt) M exp(-iHt)."""
        if not time or not np.any(self.model.quasi_energies):
            return matrix
        energies, vectors = self._eigensystem
        propagator = (vectors * np.exp(-1j * energies * time)) @ vectors.conj().T
        return propagator.conj().T @ matrix @ propagator

    def matrix(self, symbol: OperatorSymbol) -> np.ndarray:
        """Matrix of a symbol, evolved to its time label."""
        cached = self._cache.get(symbol)
        if cached is not None:
            return cached
        if symbol.parent is not None:
            raise UnknownSymbol("formal components of abstract fields have no matrix image")
        if symbol.is_pure:
            static = self.quasi(symbol.base, symbol.mode)
        else:
            static = self.bare(symbol.base, symbol.mode)
        result = static if symbol.time is None else self.evolve(static, symbol.time)
        self._cache[symbol] = result
        return result

    def components(self, symbol: OperatorSymbol) -> Tuple[np.ndarray, np.ndarray]:
        """(minus, plus) matrices of a field from the model's decomposition, phases included."""
        cached = self._component_cache.get(symbol)
        if cached is not None:
            return cached
        minus_vec, plus_vec = self.model.components(symbol)
        minus = np.zeros((self.space.dimension, self.space.dimension), dtype=complex)
        plus = np.zeros_like(minus)
        for a, annihilator in enumerate(self.quasi_annihilators):
            if minus_vec[a] != 0:
                minus += minus_vec[a] * annihilator
            if plus_vec[a] != 0:
                plus += plus_vec[a] * annihilator.conj().T
        self._component_cache[symbol] = (minus, plus)
        return minus, plus

    def reconstruction_error(self, symbol: OperatorSymbol) -> float:
        """Distance between a field's bare matrix and the sum of its model components."""
        minus, plus = self.components(symbol)
        return float(np.max(np.abs(self.matrix(symbol) - minus - plus)))

    def product(self, symbols: Sequence[OperatorSymbol]) -> np.ndarray:
        result = self.space.identity()
        for symbol in symbols:
            result = result @ self.matrix(symbol)
        return result

    def normal_product(self, factors: Sequence[OperatorSymbol]) -> np.ndarray:
        """Matrix of N[factors]; fields are expanded into their +/- parts."""
        fermionic = self.space.statistics.is_fermionic
        choices = []
        for symbol in factors:
            if symbol.is_pure:
                choices.append([(symbol.sign_class, self.matrix(symbol))])
            else:
                minus, plus = self.components(symbol)
                choices.append([(1, plus), (-1, minus)])
        total = np.zeros((self.space.dimension, self.space.dimension), dtype=complex)
        for combination in itertools.product(*choices):
            classes = [c for c, _ in combination]
            order = sorted(range(len(combination)), key=lambda k: -classes[k])
            sign = _stable_move_sign(classes) if fermionic else 1
            matrix = self.space.identity()
            for k in order:
                matrix = matrix @ combination[k][1]
            total += sign * matrix
        return total


def _stable_move_sign(classes: Sequence[int]) -> int:
    """Sign of stably moving every + factor left of every - factor."""
    crossings = 0
    minus_seen = 0
    for c in classes:
        if c < 0:
            minus_seen += 1
        else:
            crossings += minus_seen
    return -1 if crossings % 2 else 1


def _contraction_value(oracle: FockOracle, state: np.ndarray, a: OperatorSymbol, b: OperatorSymbol,
                       time_ordered: bool) -> complex:
    sign = 1
    if time_ordered:
        ordered = time_order([a, b], oracle.space.statistics)
        sign = int(ordered.coefficient.real)
        a, b = ordered.normal_factors
    return complex(sign * (state.conj() @ oracle.matrix(a) @ oracle.matrix(b) @ state))


def check_operator_identity(
    lhs: Sequence[OperatorSymbol],
    rhs: Expansion,
    space: FockSpace,
    state_spec: Optional[StateSpec],
    model,
    time_ordered: bool = False,
) -> float:
    """Largest entrywise deviation between a product and its expansion.

    Symbolic contractions take their values from the oracle state, so the
    check is independent of the model's contraction formulas. Bosonic spaces
    are compared on the block the cutoff cannot affect.

    Raises:
        UnknownSymbol: if a symbol has no matrix image in the space
        OracleError: if the model cannot be represented exactly
    """
    if state_spec is None:
        raise OracleError(f"the {model.name} reference state has no exact Fock-space image")
    oracle = FockOracle(space, model)
    state = build_state(space, state_spec)
    block = space.safe_block(len(lhs))
    if block.size == 0:
        raise OracleError(f"cutoff {space.cutoff} leaves no exact block for {len(lhs)} operators")

    if time_ordered:
        ordered = time_order(lhs, space.statistics)
        left = ordered.coefficient * oracle.product(ordered.normal_factors)
    else:
        left = oracle.product(lhs)

    values: Dict[Tuple[int, int], complex] = {}
    right = np.zeros_like(left)
    for term in rhs.terms:
        coefficient = term.coefficient
        for pair in term.contractions:
            if pair not in values:
                i, j = pair
                values[pair] = _contraction_value(oracle, state, rhs.product[i], rhs.product[j], time_ordered)
            coefficient *= values[pair]
        if coefficient == 0:
            continue
        right += coefficient * oracle.normal_product(term.normal_factors)

    deviation = float(np.max(np.abs((left - right)[np.ix_(block, block)])))
    logger.debug(f"Operator identity over {len(rhs)} terms: deviation {deviation:.3e}")
    return deviation


def annihilates_state(oracle: FockOracle, state: np.ndarray) -> float:
    """Largest norm of alpha_a^- |state> over all quasi modes."""
    return max((float(np.linalg.norm(a @ state)) for a in oracle.quasi_annihilators), default=0.0)


__all__ = ["FockOracle", "annihilates_state", "check_operator_identity"]
