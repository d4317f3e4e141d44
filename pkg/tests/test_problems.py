from __future__ import annotations

import math

import numpy as np
import pytest

from sonopt.errors import OutOfBoundsError
from sonopt.problems import PROBLEMS, get_problem, zdt1_pareto_front


# Straight-from-formula oracles, written with plain math on purpose so they
# share no code with the vectorized implementations they check.

def oracle_zdt1(x):
    n = len(x)
    f1 = x[0]
    g = 1.0 + 9.0 * sum(x[i] for i in range(1, n)) / (n - 1)
    return f1, g * (1.0 - math.sqrt(f1 / g))


def oracle_zdt4(x):
    n = len(x)
    f1 = x[0]
    g = 1.0 + 10.0 * (n - 1)
    for i in range(1, n):
        g += x[i] * x[i] - 10.0 * math.cos(4.0 * math.pi * x[i])
    return f1, g * (1.0 - math.sqrt(f1 / g))


def oracle_kursawe(x):
    f1 = sum(-10.0 * math.exp(-0.2 * math.sqrt(x[i] ** 2 + x[i + 1] ** 2)) for i in range(2))
    f2 = sum(abs(x[i]) ** 0.8 + 5.0 * math.sin(x[i] ** 3) for i in range(3))
    return f1, f2


def oracle_tanaka(x):
    x1, x2 = x
    f = (x1, x2)
    theta = math.atan2(x1, x2)
    c1 = x1 * x1 + x2 * x2 - 1.0 - 0.1 * math.cos(16.0 * theta)
    c2 = (x1 - 0.5) ** 2 + (x2 - 0.5) ** 2
    return f, max(0.0, -c1) + max(0.0, c2 - 0.5)


class TestZdt1:
    problem = get_problem("zdt1")

    def test_all_zeros(self):
        assert self.problem.evaluate(np.zeros(30)) == (0.0, 1.0)

    def test_first_coordinate_one(self):
        x = np.zeros(30)
        x[0] = 1.0
        assert self.problem.evaluate(x) == (1.0, 0.0)

    def test_quarter_point(self):
        x = np.zeros(30)
        x[0] = 0.25
        assert self.problem.evaluate(x) == (0.25, 0.5)

    def test_out_of_bounds(self):
        x = np.zeros(30)
        x[3] = 1.5
        with pytest.raises(OutOfBoundsError):
            self.problem.evaluate(x)


class TestZdt4:
    problem = get_problem("zdt4")

    def test_all_zeros(self):
        assert self.problem.evaluate(np.zeros(10)) == (0.0, 1.0)

    def test_halfway_first_coordinate(self):
        x = np.zeros(10)
        x[0] = 0.5
        f1, f2 = self.problem.evaluate(x)
        assert f1 == 0.5
        assert f2 == pytest.approx(1.0 - math.sqrt(0.5), abs=1e-15)

    def test_single_unit_tail_variable(self):
        # g = 1 + 90 + (1 - 10*cos(4*pi)) + 8 * (0 - 10*cos(0)) = 2,
        # confirmed by the independent oracle below.
        x = np.zeros(10)
        x[1] = 1.0
        expected = oracle_zdt4(list(x))
        assert expected == (0.0, 2.0)
        assert self.problem.evaluate(x) == expected

    def test_wide_bounds_on_tail(self):
        x = np.zeros(10)
        x[5] = -5.0
        f = self.problem.evaluate(x)
        assert np.isfinite(f).all()
        x[0] = -0.1
        with pytest.raises(OutOfBoundsError):
            self.problem.evaluate(x)


class TestKursawe:
    problem = get_problem("kursawe")

    def test_origin(self):
        assert self.problem.evaluate(np.zeros(3)) == (-20.0, 0.0)

    def test_ones_matches_oracle(self):
        got = self.problem.evaluate(np.ones(3))
        expected = oracle_kursawe([1.0, 1.0, 1.0])
        assert got == pytest.approx(expected, abs=1e-12)
        assert expected[1] == pytest.approx(3.0 * (1.0 + 5.0 * math.sin(1.0)), abs=1e-12)

    def test_f1_even_in_x(self, rng):
        for _ in range(20):
            x = rng.uniform(-5, 5, 3)
            f1a, _ = self.problem.evaluate(x)
            f1b, _ = self.problem.evaluate(-x)
            assert f1a == pytest.approx(f1b, abs=1e-12)


class TestTanaka:
    problem = get_problem("tanaka")

    def test_feasible_corner(self):
        assert self.problem.evaluate(np.array([1.0, 1.0])) == (1.0, 1.0)
        assert self.problem.violation(np.array([1.0, 1.0])) == 0.0

    def test_inner_point_violation(self):
        # C1 = 0.02 - 1 - 0.1*cos(4*pi) = -1.08, so violation 1.08.
        violation = self.problem.violation(np.array([0.1, 0.1]))
        assert violation == pytest.approx(1.08, abs=1e-12)

    def test_objectives_equal_decision_vector(self, rng):
        for _ in range(10):
            x = rng.uniform(0, math.pi, 2)
            assert self.problem.evaluate(x) == (x[0], x[1])

    def test_axis_limit_handled(self):
        v = self.problem.violation(np.array([1.0, 0.0]))
        assert math.isfinite(v)
        # atan2(1, 0) = pi/2, so cos(16 * pi/2) = cos(8*pi) = 1 and
        # C1 = 1 - 1 - 0.1 = -0.1; C2 = 0.5 contributes nothing.
        assert v == pytest.approx(0.1, abs=1e-12)


ORACLES = {
    "zdt1": lambda x: oracle_zdt1(list(x)),
    "zdt4": lambda x: oracle_zdt4(list(x)),
    "kursawe": lambda x: oracle_kursawe(list(x)),
}


@pytest.mark.parametrize("name", ["zdt1", "zdt4", "kursawe", "tanaka"])
def test_oracle_equivalence_on_random_points(name):
    problem = get_problem(name)
    rng = np.random.Generator(np.random.PCG64(2024))
    for _ in range(1000):
        x = rng.uniform(problem.lower, problem.upper)
        got = problem.evaluate(x)
        if name == "tanaka":
            expected_f, expected_v = oracle_tanaka(list(x))
            assert got == pytest.approx(expected_f, abs=1e-12)
            assert problem.violation(x) == pytest.approx(expected_v, abs=1e-12)
        else:
            assert got == pytest.approx(ORACLES[name](x), abs=1e-12)


def test_registry_contains_the_four_problems():
    assert set(PROBLEMS) == {"zdt1", "zdt4", "kursawe", "tanaka"}
    with pytest.raises(KeyError):
        get_problem("zdt9")


def test_zdt1_reference_front_shape():
    ref = zdt1_pareto_front(1000)
    assert ref.shape == (1000, 2)
    np.testing.assert_allclose(ref[:, 1], 1.0 - np.sqrt(ref[:, 0]))
    assert ref[0, 0] == 0.0 and ref[-1, 0] == 1.0
