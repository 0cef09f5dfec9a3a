"""BCS paired state and its Bogoliubov-Valatin quasiparticles.

Spin-momentum modes are flattened with (k, up) -> 2k and (-k, down) -> 2k + 1.
For each pair the quasi annihilators are

    alpha_k = u a_{2k} - v a+_{2k+1}        (quasi index 2k)
    beta_k  = u a_{2k+1} + v a+_{2k}        (quasi index 2k + 1)

and both annihilate (u + v a+_{2k} a+_{2k+1})|0>. Inverting,

    a_{2k}    = u* alpha + v beta+         a+_{2k}    = u alpha+ + v* beta
    a_{2k+1}  = u* beta - v alpha+         a+_{2k+1}  = u beta+ - v* alpha

which gives <a_{2k} a_{2k+1}> = -u* v and <a+_{2k} a_{2k}> = |v|^2.
"""
import logging
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.operators import OperatorBase, OperatorSymbol, Statistics
from ..errors import BadAmplitudes, UnknownPair
from ..oracle.fock import StateSpec
from .base import Components, LinearModel

logger = logging.getLogger(__name__)

SPINS = ("up", "down")


class BcsModel(LinearModel):
    """Product of Cooper-pair states over K momentum pairs.

    Args:
        amplitudes: (u_k, v_k) per pair with |u|^2 + |v|^2 = 1
        energies: Quasiparticle energy E_k per pair (both branches), zero by default
        labels: Optional display label for each pair's momentum
    """

    name = "bcs"

    def __init__(
        self,
        amplitudes: Sequence[Tuple[complex, complex]],
        energies: Optional[Sequence[float]] = None,
        labels: Optional[Sequence[str]] = None,
    ):
        if not amplitudes:
            raise BadAmplitudes("a BCS state needs at least one pair")
        pairs = [(complex(u), complex(v)) for u, v in amplitudes]
        for k, (u, v) in enumerate(pairs):
            norm = abs(u) ** 2 + abs(v) ** 2
            if abs(norm - 1.0) > 1e-12:
                raise BadAmplitudes(f"pair {k + 1}: |u|^2 + |v|^2 = {norm:.15g}, expected 1")
        n_pairs = len(pairs)
        if energies is None:
            pair_energies = np.zeros(n_pairs)
        else:
            pair_energies = np.asarray(energies, dtype=float)
            if pair_energies.shape != (n_pairs,):
                raise BadAmplitudes(f"expected {n_pairs} pair energies, got shape {pair_energies.shape}")
        self.amplitudes: List[Tuple[complex, complex]] = pairs
        self.labels = list(labels) if labels is not None else [str(k + 1) for k in range(n_pairs)]
        self.has_anomalous = any(u * v != 0 for u, v in pairs)
        super().__init__(Statistics.FERMI, 2 * n_pairs, 2 * n_pairs, None, np.repeat(pair_energies, 2))

    @property
    def n_pairs(self) -> int:
        return len(self.amplitudes)

    @staticmethod
    def mode_index(k: int, spin: str) -> int:
        """Flattened mode of (k, spin), k 0-based."""
        if spin not in SPINS:
            raise UnknownPair(f"spin must be one of {SPINS}, got {spin!r}")
        return 2 * k + (spin == "down")

    def check_mode(self, symbol: OperatorSymbol) -> None:
        if not symbol.is_pure and symbol.mode >= self.n_modes:
            k, spin = divmod(symbol.mode, 2)
            raise UnknownPair(f"no Cooper pair for momentum {k + 1} ({SPINS[spin]}); model has {self.n_pairs}")
        super().check_mode(symbol)

    def _field_components(self, base: OperatorBase, mode: int) -> Components:
        k, down = divmod(mode, 2)
        u, v = self.amplitudes[k]
        alpha, beta = 2 * k, 2 * k + 1
        minus = np.zeros(self.n_quasi, dtype=complex)
        plus = np.zeros(self.n_quasi, dtype=complex)
        annihilate = base is OperatorBase.FIELD_ANNIHILATE
        if not down and annihilate:
            minus[alpha], plus[beta] = np.conj(u), v
        elif not down:
            minus[beta], plus[alpha] = np.conj(v), u
        elif annihilate:
            minus[beta], plus[alpha] = np.conj(u), -v
        else:
            minus[alpha], plus[beta] = -np.conj(v), u
        return minus, plus

    def quasi_mode_expansion(self) -> Tuple[np.ndarray, np.ndarray]:
        P = np.zeros((self.n_quasi, self.n_modes), dtype=complex)
        Q = np.zeros((self.n_quasi, self.n_modes), dtype=complex)
        for k, (u, v) in enumerate(self.amplitudes):
            up, down = 2 * k, 2 * k + 1
            P[up, up], Q[up, down] = u, -v
            P[down, down], Q[down, up] = u, v
        return P, Q

    def reference_state(self) -> Optional[StateSpec]:
        return StateSpec(kind="bcs", amplitudes=list(self.amplitudes))

    def describe(self):
        info = super().describe()
        info["pairs"] = [
            {"label": label, "u": [u.real, u.imag], "v": [v.real, v.imag]}
            for label, (u, v) in zip(self.labels, self.amplitudes)
        ]
        return info


def bcs_contraction(ops: Tuple[OperatorSymbol, OperatorSymbol], model: BcsModel) -> complex:
    """<BCS| a b |BCS> for two spin-momentum field operators.

    Raises:
        UnknownPair: if either operator refers to a momentum without a pair
    """
    a, b = ops
    for symbol in ops:
        model.check_mode(symbol)
    return model.contract(a, b)
