import itertools

import numpy as np
import pytest

from wickcalc.algebra.operators import Statistics
from wickcalc.errors import ShapeError
from wickcalc.models import BcsModel, FermiSeaModel
from wickcalc.oracle import FockOracle, FockSpace, build_state
from wickcalc.time_ordered import green_by_pairings, n_particle_green, permanent, propagator_matrix, t_contract, time_order
from wickcalc.time_ordered.green import green_product

from .helpers import psi, psi_dagger, random_fermi_sea

FERMI = Statistics.FERMI
BOSE = Statistics.BOSE


def brute_force_permanent(matrix):
    n = matrix.shape[0]
    return sum(np.prod([matrix[i, p[i]] for i in range(n)]) for p in itertools.permutations(range(n)))


def random_points(rng, n, n_modes):
    return [(int(rng.integers(n_modes)), float(rng.uniform(-2.0, 2.0))) for _ in range(n)]


def oracle_green(model, xs, ys):
    """(-i)^n <gs| T psi(x_1) ... psi+(y_1) |gs> with matrices evolved by the oracle Hamiltonian."""
    space = FockSpace(model.statistics, model.n_modes)
    oracle = FockOracle(space, model)
    state = build_state(space, model.reference_state())
    ordered = time_order(green_product(xs, ys), model.statistics)
    matrix = ordered.coefficient * oracle.product(ordered.normal_factors)
    return (-1j) ** len(xs) * complex(state.conj() @ matrix @ state)


class TestPermanent:
    def test_ones(self):
        assert permanent([[1, 1], [1, 1]]) == 2

    @pytest.mark.parametrize("n", [1, 3, 6])
    def test_identity(self, n):
        assert permanent(np.eye(n)) == pytest.approx(1)

    def test_empty(self):
        assert permanent(np.zeros((0, 0))) == 1

    @pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
    def test_matches_factorial_sum(self, rng, n):
        matrix = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
        assert permanent(matrix) == pytest.approx(brute_force_permanent(matrix), rel=1e-12, abs=1e-12)

    def test_not_square(self):
        with pytest.raises(ShapeError):
            permanent(np.ones((2, 3)))

    def test_too_large(self):
        with pytest.raises(ShapeError):
            permanent(np.ones((21, 21)))


class TestGreenFunctions:
    def test_single_particle(self, rng):
        model = random_fermi_sea(rng, 3, frequencies=True)
        x, y = (1, 0.7), (2, -0.4)
        expected = -1j * t_contract(psi(*x), psi_dagger(*y), model)
        assert n_particle_green([x], [y], model) == pytest.approx(expected, abs=1e-15)

    def test_two_particles(self, rng):
        model = random_fermi_sea(rng, 3, frequencies=True)
        xs, ys = random_points(rng, 2, 3), random_points(rng, 2, 3)
        g = propagator_matrix(xs, ys, model).entries
        expected = g[0, 0] * g[1, 1] - g[0, 1] * g[1, 0]
        assert n_particle_green(xs, ys, model) == pytest.approx(expected, abs=1e-12)

    def test_propagator_entries(self, rng):
        model = random_fermi_sea(rng, 3, frequencies=True)
        xs, ys = random_points(rng, 3, 3), random_points(rng, 3, 3)
        matrix = propagator_matrix(xs, ys, model)
        assert matrix.order == 3
        for i, x in enumerate(xs):
            for j, y in enumerate(ys):
                assert matrix.entries[i, j] == -1j * t_contract(psi(*x), psi_dagger(*y), model)

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_determinant_matches_pair_sum(self, rng, n):
        for _ in range(5):
            model = random_fermi_sea(rng, 4, frequencies=True)
            xs, ys = random_points(rng, n, 4), random_points(rng, n, 4)
            np.testing.assert_allclose(
                n_particle_green(xs, ys, model), green_by_pairings(xs, ys, model), rtol=1e-10, atol=1e-10,
            )

    @pytest.mark.parametrize("n", [1, 2, 3, 4])
    def test_permanent_matches_pair_sum(self, rng, n):
        for _ in range(5):
            model = random_fermi_sea(rng, 3, statistics=BOSE, frequencies=True)
            xs, ys = random_points(rng, n, 3), random_points(rng, n, 3)
            np.testing.assert_allclose(
                n_particle_green(xs, ys, model), green_by_pairings(xs, ys, model), rtol=1e-10, atol=1e-10,
            )

    @pytest.mark.parametrize("n", [1, 2])
    def test_paired_state_against_dense_evolution(self, rng, n):
        model = BcsModel([(0.6, 0.8), (0.8, 0.6j)], energies=[0.7, 1.3])
        for _ in range(10):
            xs, ys = random_points(rng, n, 4), random_points(rng, n, 4)
            assert n_particle_green(xs, ys, model) == pytest.approx(oracle_green(model, xs, ys), abs=1e-12)

    def test_filled_level_hole_propagator(self):
        model = FermiSeaModel(2, 1)
        # a hole propagates backwards: only the psi+ psi ordering survives
        assert n_particle_green([(0, 0.0)], [(0, 1.0)], model) == pytest.approx(1j)
        assert n_particle_green([(0, 1.0)], [(0, 0.0)], model) == 0

    @pytest.mark.parametrize("xs, ys", [
        ([(0, 0.0)], []),
        ([], []),
        ([(0, 0.0), (1, 0.0)], [(0, 1.0)]),
    ])
    def test_shape_errors(self, xs, ys):
        with pytest.raises(ShapeError):
            n_particle_green(xs, ys, FermiSeaModel(2))
