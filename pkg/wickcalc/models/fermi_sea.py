"""Independent particles with the lowest N single-particle levels filled."""
import logging
from typing import Optional, Sequence, Tuple

import numpy as np

from ..algebra.operators import OperatorBase, OperatorSymbol, Statistics
from ..errors import BadAmplitudes, ModelError
from ..oracle.fock import StateSpec
from .base import Components, LinearModel

logger = logging.getLogger(__name__)


class FermiSeaModel(LinearModel):
    """Fermi sea |F> (or the free vacuum for bosons).

    Quasi operators are particle-hole operators: alpha_a^- = c_a^dagger for
    filled levels (a < N) and c_a otherwise. A field expands over levels
    through the overlap matrix, psi_i = sum_a U[i, a] c_a.

    Args:
        n_modes: Number of single-particle levels M
        n_filled: Number of filled levels N (must be 0 for bosons)
        overlaps: M x M matrix U[i, a] = <i|a>, identity by default
        frequencies: Level energies omega_a, nondecreasing
        statistics: Fermi by default
    """

    name = "fermisea"

    def __init__(
        self,
        n_modes: int,
        n_filled: int = 0,
        overlaps: Optional[np.ndarray] = None,
        frequencies: Optional[Sequence[float]] = None,
        statistics: Statistics = Statistics.FERMI,
    ):
        if n_modes < 1:
            raise ModelError("a Fermi sea needs at least one level")
        if not 0 <= n_filled <= n_modes:
            raise ModelError(f"cannot fill {n_filled} of {n_modes} levels")
        if Statistics(statistics) is Statistics.BOSE and n_filled:
            raise ModelError("bosons have no Fermi sea; use n_filled=0 for the free vacuum")
        omega = np.zeros(n_modes) if frequencies is None else np.asarray(frequencies, dtype=float)
        if omega.shape != (n_modes,):
            raise BadAmplitudes(f"expected {n_modes} frequencies, got shape {omega.shape}")
        if np.any(np.diff(omega) < 0):
            raise BadAmplitudes("frequencies must be nondecreasing")
        self.n_filled = n_filled
        self.frequencies = omega
        energies = np.where(np.arange(n_modes) < n_filled, -omega, omega)
        super().__init__(statistics, n_modes, n_modes, overlaps, energies)

    def _field_components(self, base: OperatorBase, mode: int) -> Components:
        row = self.overlaps[mode]
        filled = np.arange(self.n_modes) < self.n_filled
        minus = np.zeros(self.n_quasi, dtype=complex)
        plus = np.zeros(self.n_quasi, dtype=complex)
        if base is OperatorBase.FIELD_ANNIHILATE:
            minus[~filled] = row[~filled]
            plus[filled] = row[filled]
        else:
            minus[filled] = np.conj(row[filled])
            plus[~filled] = np.conj(row[~filled])
        return minus, plus

    def quasi_mode_expansion(self) -> Tuple[np.ndarray, np.ndarray]:
        P = np.zeros((self.n_quasi, self.n_modes), dtype=complex)
        Q = np.zeros((self.n_quasi, self.n_modes), dtype=complex)
        for a in range(self.n_modes):
            if a < self.n_filled:
                Q[a, a] = 1.0
            else:
                P[a, a] = 1.0
        return P, Q

    def reference_state(self) -> Optional[StateSpec]:
        if self.n_filled == 0:
            return StateSpec(kind="vacuum")
        return StateSpec(kind="fermi_sea", n_filled=self.n_filled)

    def describe(self):
        info = super().describe()
        info["n_filled"] = self.n_filled
        return info


def fermi_sea_contraction(i: int, j: int, kind: Tuple[str, str], model: FermiSeaModel) -> complex:
    """<F| X_i Y_j |F> for X, Y in {"psi", "psi+"}.

    Equals sum_{a >= N} U[i, a] U[j, a]* for psi psi+, sum_{a < N} U[i, a]* U[j, a]
    for psi+ psi, and zero for the anomalous combinations.
    """
    bases = []
    for name in kind:
        if name not in ("psi", "psi+"):
            raise ModelError(f"unknown field kind {name!r}; use 'psi' or 'psi+'")
        bases.append(OperatorBase.FIELD_CREATE if name == "psi+" else OperatorBase.FIELD_ANNIHILATE)
    return model.contract(OperatorSymbol(bases[0], i), OperatorSymbol(bases[1], j))
