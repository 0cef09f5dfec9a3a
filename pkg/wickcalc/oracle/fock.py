"""Dense matrices on small truncated Fock spaces.

Basis states are occupation tuples in lexicographic order, so the empty
state has index 0. Fermionic annihilators carry the string sign
(-1)^(number of occupied modes before a).
"""
import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Dict, List, Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field

from ..algebra.operators import Statistics
from ..errors import BadStateSpec, SpaceTooLarge
from ..settings import get_settings

logger = logging.getLogger(__name__)


class StateSpec(BaseModel):
    """Recipe for a reference state on a Fock space."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    kind: Literal["vacuum", "fermi_sea", "bcs", "bec"]
    n_filled: int = Field(0, ge=0, description="Filled modes 1..N of a Fermi sea")
    amplitudes: List[Tuple[complex, complex]] = Field(default_factory=list, description="(u, v) per Cooper pair")
    n_particles: int = Field(0, ge=0, description="Condensate occupation")


class FockSpace:
    """Truncated Fock space of M modes.

    Args:
        statistics: Fermi (occupations 0, 1) or Bose (0..cutoff)
        n_modes: Number of modes M
        cutoff: Largest bosonic occupation per mode; ignored for fermions
        max_dimension: Refuse to build spaces larger than this
    """

    def __init__(
        self,
        statistics: Statistics,
        n_modes: int,
        cutoff: Optional[int] = None,
        max_dimension: Optional[int] = None,
    ):
        settings = get_settings()
        self.statistics = Statistics(statistics)
        if n_modes < 1:
            raise BadStateSpec("a Fock space needs at least one mode")
        self.n_modes = n_modes
        if self.statistics.is_fermionic:
            self.cutoff = 1
        else:
            self.cutoff = settings.default_cutoff if cutoff is None else cutoff
            if self.cutoff < 1:
                raise BadStateSpec(f"bosonic cutoff must be at least 1, got {self.cutoff}")
        limit = max_dimension or settings.max_dimension
        self.dimension = (self.cutoff + 1) ** n_modes
        if self.dimension > limit:
            raise SpaceTooLarge(f"{self.statistics.value} space with {n_modes} modes and cutoff {self.cutoff} "
                                f"has dimension {self.dimension} > {limit}")
        self.basis: List[Tuple[int, ...]] = list(itertools.product(range(self.cutoff + 1), repeat=n_modes))
        self.index: Dict[Tuple[int, ...], int] = {occ: k for k, occ in enumerate(self.basis)}
        logger.debug(f"Built {self.statistics.value} Fock space: {n_modes} modes, dimension {self.dimension}")

    @cached_property
    def total_occupation(self) -> np.ndarray:
        return np.array([sum(occ) for occ in self.basis])

    def safe_block(self, n_operators: int) -> np.ndarray:
        """Basis indices on which products of ``n_operators`` ladder operators are exact.

        The whole space for fermions; for bosons the states with total
        occupation <= cutoff - n_operators, which never reach the cutoff.
        """
        if self.statistics.is_fermionic:
            return np.arange(self.dimension)
        return np.flatnonzero(self.total_occupation <= self.cutoff - n_operators)

    def identity(self) -> np.ndarray:
        return np.eye(self.dimension, dtype=complex)

    @cached_property
    def mode_operators(self) -> List[Tuple["FockMatrix", "FockMatrix"]]:
        return build_mode_operators(self)


@dataclass(frozen=True)
class FockMatrix:
    """An operator on a FockSpace."""
    matrix: np.ndarray
    label: str = ""

    def adjoint(self) -> "FockMatrix":
        return FockMatrix(self.matrix.conj().T, f"({self.label})^+")

    def __matmul__(self, other: "FockMatrix") -> "FockMatrix":
        return FockMatrix(self.matrix @ other.matrix, f"{self.label} {other.label}".strip())


def build_mode_operators(space: FockSpace) -> List[Tuple[FockMatrix, FockMatrix]]:
    """(annihilator, creator) matrices for every mode.

    Fermions satisfy the anticommutation relations exactly; bosons use sqrt(n)
    entries and are exact away from the cutoff.
    """
    fermionic = space.statistics.is_fermionic
    operators = []
    for mode in range(space.n_modes):
        matrix = np.zeros((space.dimension, space.dimension), dtype=complex)
        for column, occ in enumerate(space.basis):
            n = occ[mode]
            if n == 0:
                continue
            lowered = occ[:mode] + (n - 1,) + occ[mode + 1:]
            if fermionic:
                amplitude = -1.0 if sum(occ[:mode]) % 2 else 1.0
            else:
                amplitude = np.sqrt(n)
            matrix[space.index[lowered], column] = amplitude
        annihilator = FockMatrix(matrix, f"c({mode + 1})")
        operators.append((annihilator, FockMatrix(matrix.conj().T, f"c+({mode + 1})")))
    return operators


def build_state(space: FockSpace, spec: StateSpec) -> np.ndarray:
    """Normalized state vector for a reference-state recipe.

    Raises:
        BadStateSpec: if the recipe does not fit the space
    """
    vector = np.zeros(space.dimension, dtype=complex)
    M = space.n_modes
    if spec.kind == "vacuum":
        vector[0] = 1.0
    elif spec.kind == "fermi_sea":
        if not space.statistics.is_fermionic:
            raise BadStateSpec("a Fermi sea needs a fermionic space")
        if spec.n_filled > M:
            raise BadStateSpec(f"cannot fill {spec.n_filled} of {M} modes")
        vector[space.index[(1,) * spec.n_filled + (0,) * (M - spec.n_filled)]] = 1.0
    elif spec.kind == "bcs":
        if not space.statistics.is_fermionic:
            raise BadStateSpec("a BCS state needs a fermionic space")
        if not spec.amplitudes or 2 * len(spec.amplitudes) != M:
            raise BadStateSpec(f"{len(spec.amplitudes)} pairs do not fill {M} modes")
        vector[0] = 1.0
        ops = space.mode_operators
        for k, (u, v) in enumerate(spec.amplitudes):
            pair = ops[2 * k][1].matrix @ ops[2 * k + 1][1].matrix
            vector = u * vector + v * (pair @ vector)
    elif spec.kind == "bec":
        if space.statistics.is_fermionic:
            raise BadStateSpec("a condensate needs a bosonic space")
        if spec.n_particles > space.cutoff:
            raise BadStateSpec(f"{spec.n_particles} particles exceed the cutoff {space.cutoff}")
        vector[space.index[(spec.n_particles,) + (0,) * (M - 1)]] = 1.0

    norm = np.linalg.norm(vector)
    if not np.isclose(norm, 1.0, atol=1e-12):
        raise BadStateSpec(f"state {spec.kind} has norm {norm}, expected 1")
    return vector / norm
