"""Run orchestration: drive an embedded optimizer and emit fronts per generation.

A run feeds the same FrontEvent stream to any sink: the in-process engine
queue, a JSON-lines event log, or an OSC socket (for exercising the full
wire path against a listening engine). The returned RunEventLog is always
built, whatever sink is attached.
"""

from __future__ import annotations

from typing import Callable, Protocol

import numpy as np

from . import osc
from .algorithms import (
    MoeadState,
    Population,
    current_front,
    initial_population,
    moead_generation,
    nsga2_generation,
)
from .engine import LiveSession
from .events import RunEventLog
from .front import RawFront
from .params import EngineParams
from .problems import Problem, get_problem

ALGORITHMS = ("nsga2", "moead")
NSGA2_POP_SIZE = 100
MOEAD_PARTITIONS = 100  # 101 weight vectors / subproblems


class FrontSink(Protocol):
    def emit_front(self, front: RawFront) -> None: ...


class EngineSink:
    """Feeds fronts straight into a live session's message queue."""

    def __init__(self, session: LiveSession):
        self.session = session

    def emit_front(self, front: RawFront) -> None:
        self.session.submit_front(front)


class OscSink:
    """Sends each front as a /sonopt/front datagram over loopback UDP."""

    def __init__(self, host: str = osc.DEFAULT_HOST, port: int = osc.DEFAULT_PORT):
        self.host = host
        self.port = port

    def emit_front(self, front: RawFront) -> None:
        osc.send_packet(osc.encode_front(front.generation_index, front.points), self.host, self.port)


class CallbackSink:
    def __init__(self, fn: Callable[[RawFront], None]):
        self.fn = fn

    def emit_front(self, front: RawFront) -> None:
        self.fn(front)


def run_algorithm(
    problem: Problem | str,
    algorithm: str,
    generations: int,
    seed: int,
    sink: FrontSink | None = None,
    params: EngineParams | None = None,
) -> RunEventLog:
    """Run one optimizer and log every generation's non-dominated front.

    Generation 0 is the evaluated initial population; each later index is
    one evolutionary step. Fully deterministic for a fixed seed.
    """
    if isinstance(problem, str):
        problem = get_problem(problem)
    algorithm = algorithm.lower()
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; available: {ALGORITHMS}")
    if generations < 1:
        raise ValueError("generations must be >= 1")

    rng = np.random.Generator(np.random.PCG64(seed))
    # MOEA/D carries one individual per weight vector, so its fronts can
    # reach 101 points; size the engine accordingly.
    capacity = MOEAD_PARTITIONS + 1 if algorithm == "moead" else NSGA2_POP_SIZE
    log = RunEventLog(
        problem=problem.name,
        algorithm=algorithm,
        seed=seed,
        params=(params or EngineParams()).with_capacity(capacity),
    )

    state: MoeadState | None = None
    if algorithm == "moead":
        state = MoeadState.create(partitions=MOEAD_PARTITIONS)
        pop = initial_population(problem, MOEAD_PARTITIONS + 1, rng)
    else:
        pop = initial_population(problem, NSGA2_POP_SIZE, rng)

    def emit(p: Population) -> None:
        front = RawFront(
            generation_index=p.generation_index,
            points=current_front(p),
            source_id=f"{algorithm}/{problem.name}/seed{seed}",
        )
        log.add_front(front)
        if sink is not None:
            sink.emit_front(front)

    emit(pop)
    for _ in range(generations - 1):
        if algorithm == "moead":
            assert state is not None
            pop = moead_generation(pop, state, problem, rng)
        else:
            pop = nsga2_generation(pop, problem, rng)
        emit(pop)
    return log
