from __future__ import annotations

import numpy as np
import pytest

from sonopt.algorithms import (
    MoeadState,
    crowding_distance,
    das_dennis_weights,
    current_front,
    fast_nondominated_sort,
    initial_population,
    moead_generation,
    nsga2_generation,
    polynomial_mutation,
    sbx_beta,
    sbx_pair,
    tchebycheff,
)
from sonopt.events import FrontEvent
from sonopt.front import nondominated_filter
from sonopt.harness import run_algorithm
from sonopt.problems import get_problem

from conftest import brute_force_nondominated


class _MidpointRng:
    """Fake generator returning 0.5 for every draw: SBX identity case."""

    def random(self, size=None):
        if size is None:
            return 0.5
        return np.full(size, 0.5)


class TestSorting:
    def test_rank_assignment_matches_pairwise_dominance(self):
        f = np.array([(1.0, 5.0), (2.0, 2.0), (3.0, 4.0), (4.0, 4.0)])
        ranks = fast_nondominated_sort(f)
        np.testing.assert_array_equal(ranks, [0, 0, 1, 2])

    def test_rank_zero_equals_brute_force_front(self, rng):
        f = rng.random((60, 2))
        ranks = fast_nondominated_sort(f)
        expected = brute_force_nondominated(f)
        np.testing.assert_array_equal(f[ranks == 0], expected)

    def test_feasible_always_outranks_infeasible(self):
        f = np.array([(10.0, 10.0), (0.0, 0.0)])
        v = np.array([0.0, 2.5])
        ranks = fast_nondominated_sort(f, v)
        np.testing.assert_array_equal(ranks, [0, 1])

    def test_lower_violation_wins_among_infeasible(self):
        f = np.array([(0.0, 0.0), (5.0, 5.0)])
        v = np.array([3.0, 1.0])
        ranks = fast_nondominated_sort(f, v)
        np.testing.assert_array_equal(ranks, [1, 0])

    def test_boundary_points_get_infinite_crowding(self):
        f = np.array([(0.0, 1.0), (0.4, 0.6), (0.5, 0.5), (1.0, 0.0)])
        dist = crowding_distance(f)
        assert dist[0] == np.inf
        assert dist[-1] == np.inf
        assert np.isfinite(dist[1:3]).all()


class TestOperators:
    def test_sbx_beta_midpoint_is_one(self):
        assert sbx_beta(0.5, 15.0) == 1.0

    def test_sbx_midpoint_draw_returns_parents(self):
        p1 = np.array([0.1, 0.4, 0.9])
        p2 = np.array([0.2, 0.8, 0.3])
        lower, upper = np.zeros(3), np.ones(3)
        c1, c2 = sbx_pair(p1, p2, lower, upper, _MidpointRng(), eta=15.0, prob=0.9)
        np.testing.assert_array_equal(c1, p1)
        np.testing.assert_array_equal(c2, p2)

    def test_sbx_children_stay_in_bounds(self, rng):
        lower, upper = np.zeros(10), np.ones(10)
        for _ in range(200):
            p1 = rng.random(10)
            p2 = rng.random(10)
            c1, c2 = sbx_pair(p1, p2, lower, upper, rng, eta=15.0, prob=1.0)
            for c in (c1, c2):
                assert (c >= lower).all() and (c <= upper).all()

    def test_mutation_stays_in_bounds(self, rng):
        lower, upper = np.full(8, -5.0), np.full(8, 5.0)
        for _ in range(200):
            x = rng.uniform(-5, 5, 8)
            y = polynomial_mutation(x, lower, upper, rng, eta=20.0, prob=0.5)
            assert (y >= lower).all() and (y <= upper).all()


class TestMoeadPieces:
    def test_das_dennis_count_and_pattern(self):
        w = das_dennis_weights(100)
        assert w.shape == (101, 2)
        np.testing.assert_allclose(w.sum(axis=1), 1.0)
        np.testing.assert_allclose(w[:, 0], np.arange(101) / 100.0)

    def test_tchebycheff_hand_values(self):
        assert tchebycheff(np.array([2.0, 4.0]), np.array([0.5, 0.5]), np.array([0.0, 0.0])) == 2.0
        assert tchebycheff(np.array([3.0, 9.0]), np.array([1.0, 0.0]), np.array([3.0, 0.0])) == 0.0

    def test_neighborhoods_include_self_first(self):
        state = MoeadState.create(partitions=20, neighborhood_size=5)
        np.testing.assert_array_equal(state.neighborhoods[:, 0], np.arange(21))

    def test_ideal_point_non_increasing(self, rng):
        problem = get_problem("zdt1")
        state = MoeadState.create(partitions=20)
        pop = initial_population(problem, 21, rng)
        previous = np.full(2, np.inf)
        for _ in range(5):
            pop = moead_generation(pop, state, problem, rng)
            assert (state.z_ref <= previous).all()
            previous = state.z_ref.copy()


class TestGenerations:
    def test_nsga2_keeps_population_size(self, rng):
        problem = get_problem("zdt1")
        pop = initial_population(problem, 100, rng)
        for _ in range(3):
            pop = nsga2_generation(pop, problem, rng)
            assert pop.size == 100
            assert (pop.x >= problem.lower).all() and (pop.x <= problem.upper).all()

    def test_moead_keeps_population_size(self, rng):
        problem = get_problem("kursawe")
        state = MoeadState.create(partitions=100)
        pop = initial_population(problem, 101, rng)
        pop = moead_generation(pop, state, problem, rng)
        assert pop.size == 101

    def test_emitted_front_mutually_nondominated(self, rng):
        for name in ("kursawe", "tanaka"):
            problem = get_problem(name)
            pop = initial_population(problem, 40, rng)
            front = current_front(pop)
            np.testing.assert_array_equal(front, nondominated_filter(front))

    def test_constraint_handling_prefers_feasible_front(self, rng):
        problem = get_problem("tanaka")
        pop = initial_population(problem, 100, rng)
        for _ in range(10):
            pop = nsga2_generation(pop, problem, rng)
        assert (pop.violation == 0.0).sum() > 50


class TestRunAlgorithm:
    def test_deterministic_logs_for_fixed_seed(self):
        a = run_algorithm("zdt1", "nsga2", 5, seed=9)
        b = run_algorithm("zdt1", "nsga2", 5, seed=9)
        assert a.dumps() == b.dumps()

    def test_generation_zero_front_subset_of_initial_population(self):
        problem = get_problem("zdt1")
        log = run_algorithm(problem, "nsga2", 1, seed=3)
        front = log.events[0].front.points
        rng = np.random.Generator(np.random.PCG64(3))
        x = rng.uniform(problem.lower, problem.upper, size=(100, problem.n_var))
        evaluated = np.array([problem.evaluate(xi) for xi in x])
        rows = {tuple(r) for r in evaluated}
        assert all(tuple(p) in rows for p in front)

    def test_generation_indices_sequential(self):
        log = run_algorithm("kursawe", "moead", 4, seed=1)
        fronts = [ev for ev in log.events if isinstance(ev, FrontEvent)]
        assert [f.generation_index for f in fronts] == [0, 1, 2, 3]

    def test_sink_receives_every_front(self):
        received = []

        class Collect:
            def emit_front(self, front):
                received.append(front.generation_index)

        run_algorithm("zdt1", "nsga2", 3, seed=0, sink=Collect())
        assert received == [0, 1, 2]

    def test_unknown_algorithm_rejected(self):
        with pytest.raises(ValueError):
            run_algorithm("zdt1", "annealing", 3, seed=0)
