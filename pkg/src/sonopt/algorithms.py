"""Embedded population-based optimizers: NSGA-II and MOEA/D.

NSGA-II follows Deb et al. (2002): binary tournament on (rank, crowding),
simulated binary crossover, polynomial mutation and (mu + lambda)
environmental selection via non-dominated sorting. MOEA/D follows Zhang &
Li (2007): Das-Dennis weights, Tchebycheff aggregation, neighborhood
mating and replacement, ideal-point update. Constraints use feasibility-
first domination; MOEA/D additionally penalizes the aggregation value.

All randomness flows through one numpy PCG64 generator per run, consumed
in a fixed documented order (initial sampling, then per generation:
selection draws, crossover, mutation), so runs are reproducible for a
given seed within this implementation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .front import nondominated_filter
from .problems import Problem

INFEASIBLE_PENALTY = 1e3

# Operator defaults, mirroring common library settings for these algorithms.
NSGA2_SBX_PROB = 0.9
NSGA2_SBX_ETA = 15.0
NSGA2_MUT_ETA = 20.0
MOEAD_SBX_PROB = 1.0
MOEAD_SBX_ETA = 20.0
MOEAD_MUT_ETA = 20.0
MOEAD_NEIGHBORS = 15
MOEAD_MATING_PROB = 0.7


@dataclass
class Population:
    """Decision vectors with their objectives and constraint violations."""

    x: np.ndarray
    f: np.ndarray
    violation: np.ndarray
    generation_index: int = 0

    @property
    def size(self) -> int:
        return self.x.shape[0]


def evaluate_all(problem: Problem, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    f = np.empty((x.shape[0], 2), dtype=np.float64)
    v = np.empty(x.shape[0], dtype=np.float64)
    for i in range(x.shape[0]):
        f[i] = problem.evaluate(x[i])
        v[i] = problem.violation(x[i])
    return f, v


def initial_population(problem: Problem, pop_size: int, rng: np.random.Generator) -> Population:
    x = rng.uniform(problem.lower, problem.upper, size=(pop_size, problem.n_var))
    f, v = evaluate_all(problem, x)
    return Population(x=x, f=f, violation=v, generation_index=0)


def _domination_matrix(f: np.ndarray, violation: np.ndarray) -> np.ndarray:
    """dom[i, j] is True when i constraint-dominates j.

    Feasible beats infeasible; among infeasible, lower violation wins;
    among feasible, Pareto dominance on the objectives decides.
    """
    feas = violation <= 0.0
    pareto_le = (f[:, None, 0] <= f[None, :, 0]) & (f[:, None, 1] <= f[None, :, 1])
    pareto_lt = (f[:, None, 0] < f[None, :, 0]) | (f[:, None, 1] < f[None, :, 1])
    pareto = pareto_le & pareto_lt
    dom = np.zeros_like(pareto)
    dom |= feas[:, None] & ~feas[None, :]
    dom |= (~feas[:, None]) & (~feas[None, :]) & (violation[:, None] < violation[None, :])
    dom |= feas[:, None] & feas[None, :] & pareto
    return dom


def fast_nondominated_sort(f: np.ndarray, violation: np.ndarray | None = None) -> np.ndarray:
    """Rank every individual; rank 0 is the non-dominated set."""
    n = f.shape[0]
    if violation is None:
        violation = np.zeros(n)
    dom = _domination_matrix(f, violation)
    counts = dom.sum(axis=0).astype(np.int64)
    ranks = np.full(n, -1, dtype=np.int64)
    current = np.nonzero(counts == 0)[0]
    rank = 0
    while current.size:
        ranks[current] = rank
        counts[current] = -1
        counts -= dom[current].sum(axis=0)
        current = np.nonzero(counts == 0)[0]
        rank += 1
    return ranks


def crowding_distance(f: np.ndarray) -> np.ndarray:
    """Crowding distance within one front; boundary points get +inf."""
    n = f.shape[0]
    dist = np.zeros(n, dtype=np.float64)
    if n <= 2:
        return np.full(n, np.inf)
    for m in range(f.shape[1]):
        order = np.argsort(f[:, m], kind="stable")
        span = f[order[-1], m] - f[order[0], m]
        dist[order[0]] = np.inf
        dist[order[-1]] = np.inf
        if span > 0:
            dist[order[1:-1]] += (f[order[2:], m] - f[order[:-2], m]) / span
    return dist


def sbx_beta(u: float, eta: float) -> float:
    """Spread factor of simulated binary crossover for one uniform draw."""
    if u <= 0.5:
        return (2.0 * u) ** (1.0 / (eta + 1.0))
    return (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0))


def sbx_pair(
    p1: np.ndarray,
    p2: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
    eta: float,
    prob: float,
) -> tuple[np.ndarray, np.ndarray]:
    """Crossover one parent pair; children are clamped to the box bounds.

    Standard real-coded SBX: each variable crosses with probability 0.5,
    spread factors come from one uniform draw each, and the two child
    values swap sides with probability 0.5. Draw order per pair is fixed:
    pair gate, variable gates, spread draws, swap draws.
    """
    if rng.random() > prob:
        return p1.copy(), p2.copy()
    n = p1.shape[0]
    cross = rng.random(n) <= 0.5
    u = rng.random(n)
    beta = np.where(
        u <= 0.5,
        (2.0 * u) ** (1.0 / (eta + 1.0)),
        (1.0 / (2.0 * (1.0 - u))) ** (1.0 / (eta + 1.0)),
    )
    a = 0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2)
    b = 0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2)
    swap = rng.random(n) < 0.5
    low = np.where(swap, b, a)
    high = np.where(swap, a, b)
    c1 = np.where(cross, low, p1)
    c2 = np.where(cross, high, p2)
    return np.clip(c1, lower, upper), np.clip(c2, lower, upper)


def polynomial_mutation(
    x: np.ndarray,
    lower: np.ndarray,
    upper: np.ndarray,
    rng: np.random.Generator,
    eta: float,
    prob: float,
) -> np.ndarray:
    """Per-variable bounded mutation; result is clamped to the box bounds."""
    y = x.copy()
    hit = rng.random(x.shape[0]) < prob
    u = rng.random(x.shape[0])
    delta = np.where(
        u < 0.5,
        (2.0 * u) ** (1.0 / (eta + 1.0)) - 1.0,
        1.0 - (2.0 * (1.0 - u)) ** (1.0 / (eta + 1.0)),
    )
    y[hit] = y[hit] + delta[hit] * (upper[hit] - lower[hit])
    return np.clip(y, lower, upper)


def _tournament(ranks: np.ndarray, crowding: np.ndarray, a: int, b: int) -> int:
    if ranks[a] != ranks[b]:
        return a if ranks[a] < ranks[b] else b
    if crowding[a] != crowding[b]:
        return a if crowding[a] > crowding[b] else b
    return a


def nsga2_generation(pop: Population, problem: Problem, rng: np.random.Generator) -> Population:
    """One (mu + lambda) NSGA-II step at constant population size."""
    mu = pop.size
    ranks = fast_nondominated_sort(pop.f, pop.violation)
    crowd = np.zeros(mu, dtype=np.float64)
    for r in range(ranks.max() + 1):
        idx = np.nonzero(ranks == r)[0]
        crowd[idx] = crowding_distance(pop.f[idx])

    mut_prob = 1.0 / problem.n_var
    children = np.empty_like(pop.x)
    for k in range(0, mu, 2):
        draws = rng.integers(0, mu, size=4)
        pa = _tournament(ranks, crowd, int(draws[0]), int(draws[1]))
        pb = _tournament(ranks, crowd, int(draws[2]), int(draws[3]))
        c1, c2 = sbx_pair(
            pop.x[pa], pop.x[pb], problem.lower, problem.upper, rng, NSGA2_SBX_ETA, NSGA2_SBX_PROB
        )
        children[k] = polynomial_mutation(c1, problem.lower, problem.upper, rng, NSGA2_MUT_ETA, mut_prob)
        if k + 1 < mu:
            children[k + 1] = polynomial_mutation(
                c2, problem.lower, problem.upper, rng, NSGA2_MUT_ETA, mut_prob
            )
    child_f, child_v = evaluate_all(problem, children)

    all_x = np.vstack([pop.x, children])
    all_f = np.vstack([pop.f, child_f])
    all_v = np.concatenate([pop.violation, child_v])
    all_ranks = fast_nondominated_sort(all_f, all_v)

    chosen: list[int] = []
    for r in range(all_ranks.max() + 1):
        idx = np.nonzero(all_ranks == r)[0]
        if len(chosen) + idx.size <= mu:
            chosen.extend(int(i) for i in idx)
        else:
            dist = crowding_distance(all_f[idx])
            order = np.argsort(-dist, kind="stable")
            need = mu - len(chosen)
            chosen.extend(int(idx[i]) for i in order[:need])
        if len(chosen) == mu:
            break
    sel = np.array(chosen, dtype=np.int64)
    return Population(
        x=all_x[sel], f=all_f[sel], violation=all_v[sel], generation_index=pop.generation_index + 1
    )


def das_dennis_weights(partitions: int) -> np.ndarray:
    """Uniform 2-D simplex weights (k/H, 1-k/H); H partitions give H+1 vectors."""
    k = np.arange(partitions + 1, dtype=np.float64)
    return np.column_stack([k / partitions, 1.0 - k / partitions])


def tchebycheff(f: np.ndarray, weight: np.ndarray, z_ref: np.ndarray) -> float:
    """g(x | lambda, z*) = max_i lambda_i * |f_i - z*_i|."""
    return float(np.max(weight * np.abs(f - z_ref)))


@dataclass
class MoeadState:
    """Weights, neighborhoods and ideal point carried across generations."""

    weights: np.ndarray
    neighborhoods: np.ndarray
    z_ref: np.ndarray = field(default_factory=lambda: np.full(2, np.inf))

    @classmethod
    def create(cls, partitions: int = 100, neighborhood_size: int = MOEAD_NEIGHBORS) -> "MoeadState":
        weights = das_dennis_weights(partitions)
        dists = np.sqrt(((weights[:, None, :] - weights[None, :, :]) ** 2).sum(axis=2))
        neighborhoods = np.argsort(dists, axis=1, kind="stable")[:, :neighborhood_size]
        return cls(weights=weights, neighborhoods=neighborhoods)


def _aggregation(f: np.ndarray, violation: float, weight: np.ndarray, z_ref: np.ndarray) -> float:
    return tchebycheff(f, weight, z_ref) + INFEASIBLE_PENALTY * violation


def moead_generation(
    pop: Population, state: MoeadState, problem: Problem, rng: np.random.Generator
) -> Population:
    """One pass over all subproblems with neighborhood mating and replacement."""
    n_sub = state.weights.shape[0]
    if pop.size != n_sub:
        raise ValueError(f"population size {pop.size} must match {n_sub} weight vectors")
    x = pop.x.copy()
    f = pop.f.copy()
    v = pop.violation.copy()
    state.z_ref = np.minimum(state.z_ref, f.min(axis=0))
    mut_prob = 1.0 / problem.n_var
    for i in range(n_sub):
        if rng.random() < MOEAD_MATING_PROB:
            pool = state.neighborhoods[i]
        else:
            pool = np.arange(n_sub)
        picks = rng.choice(pool.shape[0], size=2, replace=False)
        pa, pb = int(pool[picks[0]]), int(pool[picks[1]])
        c1, _ = sbx_pair(x[pa], x[pb], problem.lower, problem.upper, rng, MOEAD_SBX_ETA, MOEAD_SBX_PROB)
        child = polynomial_mutation(c1, problem.lower, problem.upper, rng, MOEAD_MUT_ETA, mut_prob)
        cf = np.asarray(problem.evaluate(child))
        cv = problem.violation(child)
        state.z_ref = np.minimum(state.z_ref, cf)
        for j in state.neighborhoods[i]:
            if _aggregation(cf, cv, state.weights[j], state.z_ref) <= _aggregation(
                f[j], v[j], state.weights[j], state.z_ref
            ):
                x[j] = child
                f[j] = cf
                v[j] = cv
    return Population(x=x, f=f, violation=v, generation_index=pop.generation_index + 1)


def current_front(pop: Population) -> np.ndarray:
    """Objectives of the emitted approximation set for this generation.

    Rank 0 under constraint domination, then a plain Pareto filter so the
    emitted set is mutually non-dominated in objective space even when
    every individual is infeasible.
    """
    ranks = fast_nondominated_sort(pop.f, pop.violation)
    best = pop.f[ranks == 0]
    return nondominated_filter(best)
