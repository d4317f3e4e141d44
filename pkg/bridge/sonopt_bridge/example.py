"""Example: hook an external optimizer's per-generation callback to an engine.

Two sources are supported:

  * pymoo (when installed): attach `SonificationCallback` to any bi-objective
    run and each generation's non-dominated set streams out live.
  * a recorded engine event log (JSON lines): replays the fronts over OSC,
    which exercises the exact external-optimizer wire path with no extra
    dependencies.

Either way the optimizer never waits on the engine: sends are fire-and-forget
and failures only log.

    python -m sonopt_bridge.example --log run.jsonl --port 9000 --delay 0.002
    python -m sonopt_bridge.example --pymoo zdt1 --gens 250 --port 9000
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from .client import DEFAULT_HOST, DEFAULT_PORT, send_front

log = logging.getLogger("sonopt_bridge.example")


def stream_log(path: str | Path, host: str, port: int, delay_s: float = 0.0) -> int:
    """Replay every front of a recorded engine event log over OSC."""
    sent = 0
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if obj.get("type") != "front":
            continue
        try:
            send_front(host, port, int(obj["generation"]), obj["points"])
            sent += 1
        except OSError as exc:
            log.warning("send failed for generation %s: %s", obj.get("generation"), exc)
        if delay_s > 0:
            time.sleep(delay_s)
    return sent


class SonificationCallback:
    """pymoo Callback streaming the current non-dominated set per generation.

    Usage:
        minimize(problem, algorithm, ..., callback=SonificationCallback())
    """

    def __init__(self, host: str = DEFAULT_HOST, port: int = DEFAULT_PORT):
        self.host = host
        self.port = port
        self._generation = 0

    def __call__(self, algorithm) -> None:
        self.notify(algorithm)

    def notify(self, algorithm) -> None:
        opt = getattr(algorithm, "opt", None)
        front = opt.get("F") if opt is not None else None
        if front is None or len(front) == 0:
            return
        try:
            send_front(self.host, self.port, self._generation, front)
        except OSError as exc:
            log.warning("send failed for generation %d: %s", self._generation, exc)
        self._generation += 1


def run_pymoo(problem_name: str, generations: int, host: str, port: int, seed: int) -> None:
    try:
        from pymoo.algorithms.moo.nsga2 import NSGA2
        from pymoo.optimize import minimize
        from pymoo.problems import get_problem
    except ImportError:
        print("pymoo is not installed; use --log to replay a recorded run instead", file=sys.stderr)
        raise SystemExit(1)
    algorithm = NSGA2(pop_size=100)
    minimize(
        get_problem(problem_name),
        algorithm,
        ("n_gen", generations),
        seed=seed,
        callback=SonificationCallback(host, port),
        verbose=False,
    )


def main(argv=None) -> None:
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--host", default=DEFAULT_HOST)
    parser.add_argument("--port", type=int, default=DEFAULT_PORT)
    source = parser.add_mutually_exclusive_group(required=True)
    source.add_argument("--log", help="replay the fronts of a recorded engine event log (JSONL)")
    source.add_argument("--pymoo", metavar="PROBLEM", help="run pymoo NSGA-II on this problem and stream live")
    parser.add_argument("--gens", type=int, default=250)
    parser.add_argument("--seed", type=int, default=1)
    parser.add_argument("--delay", type=float, default=0.0, help="seconds to sleep between replayed fronts")
    args = parser.parse_args(argv)

    logging.basicConfig(level=logging.INFO)
    if args.log:
        sent = stream_log(args.log, args.host, args.port, args.delay)
        print(f"streamed {sent} fronts to {args.host}:{args.port}")
    else:
        run_pymoo(args.pymoo, args.gens, args.host, args.port, args.seed)


if __name__ == "__main__":
    main()
