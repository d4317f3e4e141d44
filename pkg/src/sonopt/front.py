"""Per-generation approximation sets: validation, filtering, scaling, sorting.

Every generation of a bi-objective minimizer produces a matrix of objective
values. This module turns that raw matrix into the canonical form both
synthesis paths consume: objectives independently min-max scaled to [0, 1]
and points sorted along objective one.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import EmptyFrontError, NonFiniteValueError


@dataclass(frozen=True)
class RawFront:
    """One generation's objective matrix exactly as the optimizer sent it.

    ``points`` has shape (N, 2) with unnormalized (f1, f2) rows.
    """

    generation_index: int
    points: np.ndarray
    source_id: str = ""

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=np.float64))


@dataclass(frozen=True)
class GenerationFront:
    """Scaled and sorted approximation set.

    Points are sorted ascending by normalized f1; ties broken by descending
    normalized f2 so the sequence runs monotonically along the front. Each
    objective spans [0, 1] exactly whenever its raw range is nonzero.
    """

    generation_index: int
    points: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "points", np.asarray(self.points, dtype=np.float64))

    @property
    def count(self) -> int:
        return self.points.shape[0]


def validate_raw(front: RawFront) -> RawFront:
    """Return ``front`` unchanged if it is non-empty and fully finite.

    Raises:
        EmptyFrontError: zero points.
        NonFiniteValueError: any coordinate is NaN or infinite; carries the
            index of the first offending point.
    """
    pts = front.points
    if pts.size == 0 or pts.shape[0] == 0:
        raise EmptyFrontError(f"generation {front.generation_index}: empty front")
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise EmptyFrontError(
            f"generation {front.generation_index}: expected an (N, 2) matrix, got {pts.shape}"
        )
    finite = np.isfinite(pts)
    if not finite.all():
        bad = int(np.nonzero(~finite.all(axis=1))[0][0])
        raise NonFiniteValueError(bad)
    return front


def nondominated_filter(points: np.ndarray) -> np.ndarray:
    """Keep exactly the points not Pareto-dominated by another (minimization).

    p dominates q iff p.f1 <= q.f1 and p.f2 <= q.f2 with at least one strict
    inequality. Survivor order is the input order; duplicate points are all
    retained (a duplicate never strictly dominates its twin).
    """
    pts = np.asarray(points, dtype=np.float64)
    n = pts.shape[0]
    if n <= 1:
        return pts.copy()
    f1 = pts[:, 0]
    f2 = pts[:, 1]
    # Pairwise dominance: dom[i, j] == True when point i dominates point j.
    le = (f1[:, None] <= f1[None, :]) & (f2[:, None] <= f2[None, :])
    lt = (f1[:, None] < f1[None, :]) | (f2[:, None] < f2[None, :])
    dominated = (le & lt).any(axis=0)
    return pts[~dominated]


def normalize(front: RawFront) -> GenerationFront:
    """Min-max scale each objective over this generation, then sort.

    Scaling is strictly per generation: v' = (v - min) / (max - min) using
    the current front's extremes only. An objective whose values are all
    equal maps to 0 everywhere, so a flat objective contributes no chord
    distance downstream.
    """
    validate_raw(front)
    pts = front.points
    lo = pts.min(axis=0)
    hi = pts.max(axis=0)
    span = hi - lo
    scaled = np.zeros_like(pts)
    for col in range(2):
        if span[col] > 0:
            scaled[:, col] = (pts[:, col] - lo[col]) / span[col]
    order = np.lexsort((-scaled[:, 1], scaled[:, 0]))
    return GenerationFront(generation_index=front.generation_index, points=scaled[order])
