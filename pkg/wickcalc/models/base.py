"""Contract every reference-state model fulfils.

A model answers three questions about its reference state |gs>: how a field
symbol splits into +/- components, what the contraction <gs|A B|gs> of two
symbols is, and (for the oracle) how its canonical quasi operators are built
out of bare mode operators.
"""
from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from typing import Dict, List, Optional, Tuple

import numpy as np

from ..algebra.operators import OperatorBase, OperatorSymbol, Statistics
from ..errors import BadAmplitudes, UnknownMode
from ..oracle.fock import StateSpec

logger = logging.getLogger(__name__)

Components = Tuple[np.ndarray, np.ndarray]


class ModelDictionary(ABC):
    """A reference state's decomposition rules and contraction values.

    Implementations are immutable after construction and safe to share
    between threads.
    """

    name: str = "model"
    has_anomalous: bool = False
    has_condensate: bool = False

    def __init__(self, statistics: Statistics, n_modes: Optional[int]):
        self.statistics = Statistics(statistics)
        self.n_modes = n_modes

    @abstractmethod
    def decompose(self, symbol: OperatorSymbol) -> List[Tuple[complex, OperatorSymbol]]:
        """Weighted pure-class components of a symbol (+ components first)."""

    @abstractmethod
    def contract(self, a: OperatorSymbol, b: OperatorSymbol) -> complex:
        """<gs| a b |gs> with the operators in the given order."""

    def condensate_part(self, symbol: OperatorSymbol) -> complex:
        """c-number part of a field symbol; zero unless the model has a condensate."""
        return 0j

    def reference_state(self) -> Optional[StateSpec]:
        """Recipe for building |gs> on the Fock oracle, or None if it has no exact image."""
        return None

    def check_mode(self, symbol: OperatorSymbol) -> None:
        if self.n_modes is not None and symbol.is_pure is False and symbol.mode >= self.n_modes:
            raise UnknownMode(f"mode {symbol.mode + 1} outside the {self.n_modes}-mode table of {self.name}")

    def describe(self) -> Dict[str, object]:
        return {"model": self.name, "statistics": self.statistics.value, "n_modes": self.n_modes}


class LinearModel(ModelDictionary):
    """Model whose +/- parts are linear combinations of canonical quasi operators.

    Every field symbol maps to a pair of vectors over the quasi modes: the
    coefficients of its alpha-minus part and of its alpha-plus part. Because
    [alpha_a^-, alpha_b^+] = delta_ab, the contraction of A with B is the dot
    product of A's minus vector with B's plus vector. Quasi operators evolve
    by phases: alpha^-(t) = exp(-i e_a t) alpha^-, alpha^+(t) = exp(+i e_a t) alpha^+.
    """

    quasi_species = "alpha"

    def __init__(
        self,
        statistics: Statistics,
        n_modes: int,
        n_quasi: int,
        overlaps: Optional[np.ndarray] = None,
        quasi_energies: Optional[np.ndarray] = None,
    ):
        super().__init__(statistics, n_modes)
        self.n_quasi = n_quasi
        self.overlaps = _as_overlaps(overlaps, n_modes)
        energies = np.zeros(n_quasi) if quasi_energies is None else np.asarray(quasi_energies, dtype=float)
        if energies.shape != (n_quasi,):
            raise BadAmplitudes(f"expected {n_quasi} quasi energies, got shape {energies.shape}")
        self.quasi_energies = energies
        self._static_cache: Dict[Tuple[OperatorBase, int], Components] = {}

    @abstractmethod
    def _field_components(self, base: OperatorBase, mode: int) -> Components:
        """Static (minus, plus) vectors of a field symbol."""

    @abstractmethod
    def quasi_mode_expansion(self) -> Tuple[np.ndarray, np.ndarray]:
        """Matrices (P, Q) with alpha_a^- = sum_m P[a, m] c_m + Q[a, m] c_m^dagger."""

    def check_mode(self, symbol: OperatorSymbol) -> None:
        if symbol.is_pure:
            if symbol.mode >= self.n_quasi:
                raise UnknownMode(f"quasi mode {symbol.mode + 1} outside the {self.n_quasi} modes of {self.name}")
        else:
            super().check_mode(symbol)

    def static_components(self, symbol: OperatorSymbol) -> Components:
        self.check_mode(symbol)
        if symbol.is_pure:
            vector = np.zeros(self.n_quasi, dtype=complex)
            vector[symbol.mode] = 1.0
            zero = np.zeros(self.n_quasi, dtype=complex)
            return (zero, vector) if symbol.sign_class > 0 else (vector, zero)
        key = (symbol.base, symbol.mode)
        if key not in self._static_cache:
            minus, plus = self._field_components(symbol.base, symbol.mode)
            minus.setflags(write=False)
            plus.setflags(write=False)
            self._static_cache[key] = (minus, plus)
        return self._static_cache[key]

    def components(self, symbol: OperatorSymbol) -> Components:
        """(minus, plus) vectors including the free-evolution phases of ``symbol.time``."""
        minus, plus = self.static_components(symbol)
        if symbol.time is None or not self.quasi_energies.any():
            return minus, plus
        phase = np.exp(-1j * self.quasi_energies * symbol.time)
        return minus * phase, plus * np.conj(phase)

    def decompose(self, symbol: OperatorSymbol) -> List[Tuple[complex, OperatorSymbol]]:
        minus, plus = self.static_components(symbol)
        parts = []
        for base, vector in ((OperatorBase.QUASI_CREATE, plus), (OperatorBase.QUASI_ANNIHILATE, minus)):
            for a in np.flatnonzero(vector):
                parts.append((complex(vector[a]), OperatorSymbol(base, int(a), symbol.time, self.quasi_species)))
        return parts

    def contract(self, a: OperatorSymbol, b: OperatorSymbol) -> complex:
        minus, _ = self.components(a)
        _, plus = self.components(b)
        return complex(minus @ plus)

    def describe(self) -> Dict[str, object]:
        info = super().describe()
        info["n_quasi"] = self.n_quasi
        return info


def _as_overlaps(overlaps: Optional[np.ndarray], n_modes: int) -> np.ndarray:
    if overlaps is None:
        return np.eye(n_modes, dtype=complex)
    matrix = np.asarray(overlaps, dtype=complex)
    if matrix.shape != (n_modes, n_modes):
        raise BadAmplitudes(f"overlap matrix must be {n_modes}x{n_modes}, got {matrix.shape}")
    if not np.allclose(matrix.conj().T @ matrix, np.eye(n_modes), atol=1e-9):
        logger.warning("Overlap matrix is not unitary; contractions will not describe canonical operators")
    return matrix
