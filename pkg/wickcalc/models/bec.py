"""Bose condensate with the condensate amplitude replaced by a c-number.

Level 0 is the condensate. A field splits into

    psi_i = U[i, 0] sqrt(N) exp(-i omega_0 t) + phi_i,   phi_i = sum_{a>=1} U[i, a] c_a

and phi_i annihilates the reference state. Excitation level a >= 1 is quasi
mode a - 1.
"""
import logging
import math
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.operators import OperatorBase, OperatorSymbol, Statistics
from ..errors import BadAmplitudes, ModelError
from ..oracle.fock import StateSpec
from .base import Components, LinearModel

logger = logging.getLogger(__name__)


class BecModel(LinearModel):
    """Ideal condensate of density N/V in level 0 of M levels.

    Args:
        n_modes: Number of single-particle levels M (including the condensate)
        density: N/V >= 0
        volume: V > 0
        overlaps: M x M matrix U[i, a] = <i|a>, identity by default
        frequencies: Level energies omega_a
    """

    name = "bec"
    has_anomalous = True

    def __init__(
        self,
        n_modes: int,
        density: float,
        volume: float = 1.0,
        overlaps: Optional[np.ndarray] = None,
        frequencies: Optional[Sequence[float]] = None,
    ):
        if n_modes < 1:
            raise ModelError("a condensate needs at least one level")
        if density < 0:
            raise BadAmplitudes(f"density must be non-negative, got {density}")
        if volume <= 0:
            raise BadAmplitudes(f"volume must be positive, got {volume}")
        omega = np.zeros(n_modes) if frequencies is None else np.asarray(frequencies, dtype=float)
        if omega.shape != (n_modes,):
            raise BadAmplitudes(f"expected {n_modes} frequencies, got shape {omega.shape}")
        self.density = float(density)
        self.volume = float(volume)
        self.frequencies = omega
        self.has_condensate = self.density > 0
        # b is fixed real and positive
        self.amplitude = math.sqrt(self.density * self.volume)
        super().__init__(Statistics.BOSE, n_modes, n_modes - 1, overlaps, omega[1:])

    @property
    def n_particles(self) -> float:
        return self.density * self.volume

    def _field_components(self, base: OperatorBase, mode: int) -> Components:
        row = self.overlaps[mode, 1:]
        zero = np.zeros(self.n_quasi, dtype=complex)
        if base is OperatorBase.FIELD_ANNIHILATE:
            return row.astype(complex), zero
        return zero, np.conj(row).astype(complex)

    def condensate_part(self, symbol: OperatorSymbol) -> complex:
        if symbol.is_pure or not self.has_condensate:
            return 0j
        self.check_mode(symbol)
        weight = self.overlaps[symbol.mode, 0] * self.amplitude
        phase = -1j * self.frequencies[0] * (symbol.time or 0.0)
        if symbol.base is OperatorBase.FIELD_CREATE:
            return complex(np.conj(weight) * np.exp(-phase))
        return complex(weight * np.exp(phase))

    def quasi_mode_expansion(self) -> Tuple[np.ndarray, np.ndarray]:
        P = np.zeros((self.n_quasi, self.n_modes), dtype=complex)
        for a in range(1, self.n_modes):
            P[a - 1, a] = 1.0
        return P, np.zeros_like(P)

    def reference_state(self) -> Optional[StateSpec]:
        """Number state |N, 0, ...> when N is a whole number.

        The number state only reproduces the excitation contractions; its
        condensate expectation values differ from the c-number ones.
        """
        n = self.n_particles
        if abs(n - round(n)) > 1e-12:
            return None
        return StateSpec(kind="bec", n_particles=int(round(n)))

    def describe(self):
        info = super().describe()
        info.update({"density": self.density, "volume": self.volume})
        return info


def bec_decompose(symbol: OperatorSymbol, model: BecModel) -> Tuple[complex, List[Tuple[complex, OperatorSymbol]]]:
    """Split a field into its condensate scalar and its excitation components."""
    return model.condensate_part(symbol), model.decompose(symbol)
