"""Builders shared by the test modules."""
from typing import List, Optional, Sequence

import numpy as np

from wickcalc.algebra.operators import OperatorBase, OperatorSymbol, Statistics
from wickcalc.models import FermiSeaModel
from wickcalc.oracle import FockOracle, FockSpace, build_state

FIELD = OperatorBase.FIELD_ANNIHILATE
FIELD_DAGGER = OperatorBase.FIELD_CREATE
MINUS = OperatorBase.QUASI_ANNIHILATE
PLUS = OperatorBase.QUASI_CREATE


def psi(mode: int, time: Optional[float] = None, species: str = "psi") -> OperatorSymbol:
    return OperatorSymbol(FIELD, mode, time, species)


def psi_dagger(mode: int, time: Optional[float] = None, species: str = "psi") -> OperatorSymbol:
    return OperatorSymbol(FIELD_DAGGER, mode, time, species)


def alpha(mode: int, create: bool = False, time: Optional[float] = None) -> OperatorSymbol:
    return OperatorSymbol(PLUS if create else MINUS, mode, time, "alpha")


def abstract_fields(n: int) -> List[OperatorSymbol]:
    """A(1) ... A(n)."""
    return [OperatorSymbol(FIELD, i, species="A") for i in range(n)]


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    z = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_fields(
    rng: np.random.Generator,
    length: int,
    n_modes: int,
    times: bool = False,
    species: str = "psi",
) -> List[OperatorSymbol]:
    product = []
    for _ in range(length):
        base = FIELD_DAGGER if rng.random() < 0.5 else FIELD
        time = float(rng.uniform(-2.0, 2.0)) if times else None
        product.append(OperatorSymbol(base, int(rng.integers(n_modes)), time, species))
    return product


def random_fermi_sea(
    rng: np.random.Generator,
    n_modes: int,
    statistics: Statistics = Statistics.FERMI,
    frequencies: bool = False,
) -> FermiSeaModel:
    n_filled = int(rng.integers(0, n_modes + 1)) if statistics is Statistics.FERMI else 0
    omega = np.sort(rng.uniform(0.0, 2.0, n_modes)) if frequencies else None
    return FermiSeaModel(n_modes, n_filled, random_unitary(rng, n_modes), omega, statistics)


def oracle_expectation(model, symbols: Sequence[OperatorSymbol], space: Optional[FockSpace] = None) -> complex:
    """<gs| symbols |gs> from dense matrices."""
    space = space or FockSpace(model.statistics, model.n_modes)
    oracle = FockOracle(space, model)
    state = build_state(space, model.reference_state())
    return complex(state.conj() @ oracle.product(symbols) @ state)


def inversion_parity(ranks: Sequence[int]) -> int:
    """(-1)^(number of inversions), counted pair by pair."""
    inversions = sum(1 for i in range(len(ranks)) for j in range(i + 1, len(ranks)) if ranks[j] < ranks[i])
    return -1 if inversions & 1 else 1
