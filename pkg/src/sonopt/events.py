"""Run event logs: ordered fronts and parameter changes, replayable from disk.

The on-disk format is JSON lines: a header object first, then one event
object per line in generation order. Floats survive the round trip exactly
(Python serializes float64 with repr precision), which is what makes replay
byte-identical to the original render.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .front import RawFront
from .params import EngineParams


@dataclass(frozen=True)
class FrontEvent:
    generation_index: int
    front: RawFront


@dataclass(frozen=True)
class ParamEvent:
    """A live parameter change taking effect before this generation's audio."""

    generation_index: int
    name: str
    value: float


Event = Union[FrontEvent, ParamEvent]


@dataclass
class RunEventLog:
    """Everything needed to reproduce one run's audio bit for bit."""

    problem: str = ""
    algorithm: str = ""
    seed: int = 0
    params: EngineParams = field(default_factory=EngineParams)
    events: list[Event] = field(default_factory=list)

    def add_front(self, front: RawFront) -> None:
        self.events.append(FrontEvent(front.generation_index, front))

    def add_param(self, generation_index: int, name: str, value: float) -> None:
        self.events.append(ParamEvent(generation_index, name, float(value)))

    def generations(self) -> Iterable[tuple[list[ParamEvent], FrontEvent]]:
        """Yield (param changes, front) per generation in log order.

        Parameter events are grouped with the front event of the same
        generation and always precede it.
        """
        pending: list[ParamEvent] = []
        for ev in self.events:
            if isinstance(ev, ParamEvent):
                pending.append(ev)
            else:
                yield pending, ev
                pending = []

    def dumps(self) -> str:
        lines = [
            json.dumps(
                {
                    "type": "header",
                    "problem": self.problem,
                    "algorithm": self.algorithm,
                    "seed": self.seed,
                    "params": self.params.as_dict(),
                },
                sort_keys=True,
            )
        ]
        for ev in self.events:
            if isinstance(ev, ParamEvent):
                lines.append(
                    json.dumps(
                        {
                            "type": "param",
                            "generation": ev.generation_index,
                            "name": ev.name,
                            "value": ev.value,
                        },
                        sort_keys=True,
                    )
                )
            else:
                lines.append(
                    json.dumps(
                        {
                            "type": "front",
                            "generation": ev.generation_index,
                            "source_id": ev.front.source_id,
                            "points": ev.front.points.tolist(),
                        },
                        sort_keys=True,
                    )
                )
        return "\n".join(lines) + "\n"

    def save(self, path: str | Path) -> None:
        Path(path).write_text(self.dumps(), encoding="utf-8")

    @classmethod
    def loads(cls, text: str) -> "RunEventLog":
        log = cls()
        saw_header = False
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            obj = json.loads(line)
            kind = obj.get("type")
            if kind == "header":
                log.problem = obj.get("problem", "")
                log.algorithm = obj.get("algorithm", "")
                log.seed = int(obj.get("seed", 0))
                log.params = EngineParams.from_dict(obj.get("params", {}))
                saw_header = True
            elif kind == "front":
                pts = np.asarray(obj["points"], dtype=np.float64)
                log.add_front(
                    RawFront(
                        generation_index=int(obj["generation"]),
                        points=pts,
                        source_id=obj.get("source_id", ""),
                    )
                )
            elif kind == "param":
                log.add_param(int(obj["generation"]), str(obj["name"]), float(obj["value"]))
            else:
                raise ValueError(f"unknown event type {kind!r}")
        if not saw_header:
            raise ValueError("event log has no header line")
        return log

    @classmethod
    def load(cls, path: str | Path) -> "RunEventLog":
        return cls.loads(Path(path).read_text(encoding="utf-8"))
