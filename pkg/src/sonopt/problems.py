"""Built-in bi-objective benchmark problems (both objectives minimized).

Definitions follow the problems' original sources:

    ZDT1, ZDT4: Zitzler, Deb & Thiele (2000), Comparison of multiobjective
        evolutionary algorithms: empirical results.
    Kursawe: Kursawe (1990), A variant of evolution strategies for vector
        optimization.
    Tanaka: Tanaka et al. (1995), GA-based decision support system for
        multicriteria optimization.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .errors import OutOfBoundsError


@dataclass(frozen=True)
class Problem:
    """A box-bounded bi-objective problem with optional inequality constraints.

    ``evaluate`` returns the objective pair; ``violation`` returns the
    total constraint violation (0 when feasible, sum of positive parts of
    g_j(x) <= 0 otherwise).
    """

    name: str
    n_var: int
    lower: np.ndarray
    upper: np.ndarray
    evaluate: Callable[[np.ndarray], tuple[float, float]]
    violation: Callable[[np.ndarray], float]
    constrained: bool = False


def _check_bounds(x: np.ndarray, lower: np.ndarray, upper: np.ndarray, name: str) -> np.ndarray:
    x = np.asarray(x, dtype=np.float64)
    if x.shape != lower.shape:
        raise OutOfBoundsError(f"{name}: expected {lower.shape[0]} variables, got {x.shape}")
    if (x < lower).any() or (x > upper).any():
        raise OutOfBoundsError(f"{name}: decision vector outside box bounds")
    return x


def _no_constraints(_: np.ndarray) -> float:
    return 0.0


def _make_zdt1(n: int = 30) -> Problem:
    lower = np.zeros(n)
    upper = np.ones(n)

    def evaluate(x: np.ndarray) -> tuple[float, float]:
        x = _check_bounds(x, lower, upper, "zdt1")
        f1 = float(x[0])
        g = 1.0 + 9.0 * float(np.sum(x[1:])) / (n - 1)
        f2 = g * (1.0 - math.sqrt(f1 / g))
        return f1, f2

    return Problem("zdt1", n, lower, upper, evaluate, _no_constraints)


def _make_zdt4(n: int = 10) -> Problem:
    lower = np.full(n, -5.0)
    upper = np.full(n, 5.0)
    lower[0], upper[0] = 0.0, 1.0

    def evaluate(x: np.ndarray) -> tuple[float, float]:
        x = _check_bounds(x, lower, upper, "zdt4")
        f1 = float(x[0])
        tail = x[1:]
        g = 1.0 + 10.0 * (n - 1) + float(np.sum(tail**2 - 10.0 * np.cos(4.0 * np.pi * tail)))
        f2 = g * (1.0 - math.sqrt(f1 / g))
        return f1, f2

    return Problem("zdt4", n, lower, upper, evaluate, _no_constraints)


def _make_kursawe() -> Problem:
    n = 3
    lower = np.full(n, -5.0)
    upper = np.full(n, 5.0)

    def evaluate(x: np.ndarray) -> tuple[float, float]:
        x = _check_bounds(x, lower, upper, "kursawe")
        f1 = float(np.sum(-10.0 * np.exp(-0.2 * np.sqrt(x[:-1] ** 2 + x[1:] ** 2))))
        f2 = float(np.sum(np.abs(x) ** 0.8 + 5.0 * np.sin(x**3)))
        return f1, f2

    return Problem("kursawe", n, lower, upper, evaluate, _no_constraints)


def _make_tanaka() -> Problem:
    n = 2
    lower = np.zeros(n)
    upper = np.full(n, np.pi)

    def evaluate(x: np.ndarray) -> tuple[float, float]:
        x = _check_bounds(x, lower, upper, "tanaka")
        return float(x[0]), float(x[1])

    def violation(x: np.ndarray) -> float:
        x = _check_bounds(x, lower, upper, "tanaka")
        x1, x2 = float(x[0]), float(x[1])
        # atan2 realizes the one-sided limit pi/2 * sign(x1) of atan(x1/x2)
        # at x2 = 0 (bounds exclude negative coordinates).
        c1 = x1 * x1 + x2 * x2 - 1.0 - 0.1 * math.cos(16.0 * math.atan2(x1, x2))
        c2 = (x1 - 0.5) ** 2 + (x2 - 0.5) ** 2
        return max(0.0, -c1) + max(0.0, c2 - 0.5)

    return Problem("tanaka", n, lower, upper, evaluate, violation, constrained=True)


PROBLEMS: dict[str, Problem] = {
    "zdt1": _make_zdt1(),
    "zdt4": _make_zdt4(),
    "kursawe": _make_kursawe(),
    "tanaka": _make_tanaka(),
}


def get_problem(name: str) -> Problem:
    try:
        return PROBLEMS[name.lower()]
    except KeyError:
        raise KeyError(f"unknown problem {name!r}; available: {sorted(PROBLEMS)}") from None


def zdt1_pareto_front(n_points: int = 1000) -> np.ndarray:
    """Analytic front f2 = 1 - sqrt(f1), uniformly sampled in f1."""
    f1 = np.linspace(0.0, 1.0, n_points)
    return np.column_stack([f1, 1.0 - np.sqrt(f1)])
