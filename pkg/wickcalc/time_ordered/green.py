"""Free n-particle Green functions.

With the product ordered psi(x_1) ... psi(x_n) psi+(y_n) ... psi+(y_1),

    G(x_1..x_n, y_1..y_n) = (-i)^n <gs| T psi(x_1) ... psi+(y_1) |gs>

and for a state without anomalous contractions this is the determinant
(fermions) or permanent (bosons) of G0(x_i, y_j) = -i <T psi(x_i) psi+(y_j)>.
"""
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from ..algebra.operators import OperatorBase, OperatorSymbol
from ..errors import ShapeError
from ..wick.pairings import vev
from .ordering import t_contract
from .permanent import permanent

logger = logging.getLogger(__name__)

Point = Tuple[int, float]


def field_at(point: Point, create: bool = False, species: str = "psi") -> OperatorSymbol:
    mode, time = point
    base = OperatorBase.FIELD_CREATE if create else OperatorBase.FIELD_ANNIHILATE
    return OperatorSymbol(base, int(mode), float(time), species)


@dataclass(frozen=True)
class PropagatorMatrix:
    """G0(x_i, y_j) with its row and column labels."""
    entries: np.ndarray
    xs: Tuple[Point, ...]
    ys: Tuple[Point, ...]

    @property
    def order(self) -> int:
        return len(self.xs)


def _check_points(xs: Sequence[Point], ys: Sequence[Point]) -> None:
    if len(xs) != len(ys):
        raise ShapeError(f"{len(xs)} x points but {len(ys)} y points")
    if not xs:
        raise ShapeError("need at least one pair of points")


def propagator_matrix(xs: Sequence[Point], ys: Sequence[Point], model) -> PropagatorMatrix:
    """Matrix of single-particle propagators -i <T psi(x_i) psi+(y_j)>."""
    _check_points(xs, ys)
    entries = np.empty((len(xs), len(ys)), dtype=complex)
    for i, x in enumerate(xs):
        for j, y in enumerate(ys):
            entries[i, j] = -1j * t_contract(field_at(x), field_at(y, create=True), model)
    return PropagatorMatrix(entries, tuple(xs), tuple(ys))


def green_product(xs: Sequence[Point], ys: Sequence[Point]) -> List[OperatorSymbol]:
    """psi(x_1) ... psi(x_n) psi+(y_n) ... psi+(y_1)."""
    return [field_at(x) for x in xs] + [field_at(y, create=True) for y in reversed(ys)]


def green_by_pairings(
    xs: Sequence[Point],
    ys: Sequence[Point],
    model,
    workers: Optional[int] = None,
) -> complex:
    """n-particle Green function as (-i)^n times the T-product pair sum.

    Valid for every model, including those with anomalous contractions.
    """
    _check_points(xs, ys)
    value = vev(green_product(xs, ys), model, time_ordered=True, workers=workers)
    return complex((-1j) ** len(xs) * value)


def n_particle_green(xs: Sequence[Point], ys: Sequence[Point], model) -> complex:
    """Free n-particle Green function.

    Uses det / permanent of the propagator matrix, or the full pair sum when
    the model has anomalous contractions or a condensate.

    Raises:
        ShapeError: if xs and ys differ in length or are empty
    """
    _check_points(xs, ys)
    if model.has_anomalous or model.has_condensate:
        logger.info("Model has anomalous contractions; evaluating the full pair sum")
        return green_by_pairings(xs, ys, model)
    matrix = propagator_matrix(xs, ys, model).entries
    if model.statistics.is_fermionic:
        return complex(np.linalg.det(matrix))
    return permanent(matrix)
