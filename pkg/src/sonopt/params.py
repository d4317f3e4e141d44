"""Engine configuration: defaults, live-tunable subset, validation."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

# Parameters a running engine accepts over OSC or the control socket.
# Everything else (buffer sizes, partial counts, rates) is fixed per run.
LIVE_TUNABLE = frozenset(
    {"sample_value_scaling", "oscillator_hz", "fundamental_hz", "gain_p1", "gain_p2"}
)


@dataclass(frozen=True)
class EngineParams:
    """Default engine configuration.

    ``buffer_size_p1`` must be at least twice the largest per-generation
    point count and ``num_partials`` at least the largest point count;
    both default to headroom for 100-point generations.
    """

    sample_value_scaling: float = 500.0
    buffer_size_p1: int = 202
    buffer_size_p2: int = 256
    num_partials: int = 100
    oscillator_hz: float = 80.0
    fundamental_hz: float = 80.0
    gain_p1: float = 0.3
    gain_p2: float = 0.075
    max_instances: int = 100
    sample_rate_hz: float = 48000.0
    seconds_per_generation: float = 0.5
    recurrence_epsilon: float = 1e-9
    recurrence_keep: float = 1.0
    partial_increment: float = 0.05
    throttle_seed: int = 0

    def validate(self) -> "EngineParams":
        if self.buffer_size_p1 < 2 * self.max_instances:
            raise ValueError(
                f"buffer_size_p1={self.buffer_size_p1} cannot hold 2x{self.max_instances} samples"
            )
        if self.num_partials < self.max_instances:
            raise ValueError(
                f"num_partials={self.num_partials} below max points per generation {self.max_instances}"
            )
        for name in ("sample_value_scaling", "oscillator_hz", "fundamental_hz", "sample_rate_hz", "seconds_per_generation"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if not 0.0 <= self.recurrence_keep <= 1.0:
            raise ValueError("recurrence_keep must lie in [0, 1]")
        return self

    def with_param(self, name: str, value: float) -> "EngineParams":
        """Copy with one live-tunable field changed.

        Raises KeyError for unknown or non-live-tunable names so callers
        can surface the rejection without tearing the session down.
        """
        if name not in LIVE_TUNABLE:
            raise KeyError(name)
        return replace(self, **{name: float(value)})

    def with_capacity(self, max_points: int) -> "EngineParams":
        """Copy sized to accept fronts of up to ``max_points`` points.

        Only grows fields, never shrinks them; needed for sources whose
        fronts can exceed the 100-point defaults (decomposition with 100
        partitions yields 101 subproblems).
        """
        return replace(
            self,
            max_instances=max(self.max_instances, max_points),
            num_partials=max(self.num_partials, max_points),
            buffer_size_p1=max(self.buffer_size_p1, 2 * max_points),
        )

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_dict(cls, data: dict) -> "EngineParams":
        names = {f.name for f in fields(cls)}
        kwargs = {k: v for k, v in data.items() if k in names}
        return cls(**kwargs)
