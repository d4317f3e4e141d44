from __future__ import annotations

import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.Generator(np.random.PCG64(12345))


def brute_force_nondominated(points: np.ndarray) -> np.ndarray:
    """Independent reference Pareto filter: plain O(N^2) loops."""
    pts = [tuple(p) for p in np.asarray(points, dtype=float)]
    keep = []
    for i, p in enumerate(pts):
        dominated = False
        for j, q in enumerate(pts):
            if i == j:
                continue
            if q[0] <= p[0] and q[1] <= p[1] and (q[0] < p[0] or q[1] < p[1]):
                dominated = True
                break
        if not dominated:
            keep.append(p)
    return np.array(keep, dtype=float).reshape(-1, 2)


def dyadic_collinear_front(rng: np.random.Generator, n_points: int) -> np.ndarray:
    """Random normalized front whose points sit exactly on its chord.

    All coordinates and interpolation weights are multiples of 1/64, so
    every product and sum in the distance formula is exactly representable
    and the perpendicular distances come out as exact zeros.
    """
    grid = 64
    while True:
        x1, y2 = 0.0, 0.0
        x2, y1 = 1.0, 1.0
        # Random chord endpoints on the grid, start strictly left of end.
        x1 = rng.integers(0, grid // 2) / grid
        x2 = rng.integers(grid // 2 + 1, grid + 1) / grid
        y1 = rng.integers(grid // 2 + 1, grid + 1) / grid
        y2 = rng.integers(0, grid // 2) / grid
        if x2 > x1 and y1 > y2:
            break
    ts = np.sort(rng.choice(grid + 1, size=n_points - 2, replace=False)) / grid
    ts = np.concatenate([[0.0], ts, [1.0]])
    xs = x1 + ts * (x2 - x1)
    ys = y1 + ts * (y2 - y1)
    return np.column_stack([xs, ys])
