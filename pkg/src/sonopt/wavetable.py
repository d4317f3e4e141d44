"""Shape audification: front geometry to a single-cycle wavetable voice.

The distance of every front point from the chord between the two extreme
points becomes one half of a bipolar single-cycle waveform; a ramp
oscillator scans that cycle at a user-controlled frequency. Only the
leading 2N samples written by the current generation are ever read, so
stale samples from larger past generations persist in the buffer but
stay silent.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import BufferOverflowError
from .front import GenerationFront


@dataclass(frozen=True)
class Chord:
    """Straight segment between the minimizer of f1 and the minimizer of f2."""

    p_start: tuple[float, float]
    p_end: tuple[float, float]
    degenerate: bool


@dataclass
class WavetableState:
    """Lookup buffer plus scan position for the shape voice.

    ``readable_len`` is always 2N for the most recent generation of N
    points; the oscillator never reads past it. ``phase`` is measured in
    samples within the readable region.
    """

    buffer: np.ndarray
    readable_len: int = 0
    phase: float = 0.0
    scale: float = 500.0
    frequency_hz: float = 80.0

    @classmethod
    def create(cls, buffer_size: int, scale: float = 500.0, frequency_hz: float = 80.0) -> "WavetableState":
        return cls(buffer=np.zeros(buffer_size, dtype=np.float64), scale=scale, frequency_hz=frequency_hz)

    @property
    def buffer_size(self) -> int:
        return int(self.buffer.shape[0])

    def readable(self) -> np.ndarray:
        """Copy of the region the oscillator currently scans."""
        return self.buffer[: self.readable_len].copy()


def chord_of(front: GenerationFront) -> Chord:
    """Chord endpoints of a sorted front.

    The first point of the sorted front minimizes f1; the minimizer of f2
    is the last point achieving the minimal f2 value (the final element for
    a sorted non-dominated set). Degenerate when the two coincide, which
    for a front means a single point or all points coincident.
    """
    pts = front.points
    p_start = pts[0]
    min_f2 = pts[:, 1].min()
    end_idx = int(np.nonzero(pts[:, 1] == min_f2)[0][-1])
    p_end = pts[end_idx]
    degenerate = bool(p_start[0] == p_end[0] and p_start[1] == p_end[1])
    return Chord(
        p_start=(float(p_start[0]), float(p_start[1])),
        p_end=(float(p_end[0]), float(p_end[1])),
        degenerate=degenerate,
    )


def chord_distances(front: GenerationFront, chord: Chord) -> np.ndarray:
    """Perpendicular distance of every front point from the chord line.

    Uses d = |(x2-x1)(y1-yi) - (x1-xi)(y2-y1)| / sqrt((x2-x1)^2 + (y2-y1)^2)
    against the infinite line through the chord endpoints; both endpoints
    are exactly on the line so their distances are exactly 0. A degenerate
    chord falls back to the Euclidean distance from its single point.
    """
    pts = front.points
    x1, y1 = chord.p_start
    x2, y2 = chord.p_end
    if chord.degenerate:
        return np.hypot(pts[:, 0] - x1, pts[:, 1] - y1)
    dx = x2 - x1
    dy = y2 - y1
    cross = dx * (y1 - pts[:, 1]) - (x1 - pts[:, 0]) * dy
    return np.abs(cross) / math.hypot(dx, dy)


def write_wavetable(state: WavetableState, distances: np.ndarray) -> WavetableState:
    """Write one generation's distances as a bipolar cycle of 2N samples.

    The first N samples are the scaled distances hard-clamped to [-1, 1];
    the next N are their negatives, which makes the readable region sum to
    exactly zero. Samples at indices >= 2N keep whatever previous
    generations left there. Phase is preserved, then wrapped into the new
    readable length to avoid restart clicks.
    """
    d = np.asarray(distances, dtype=np.float64)
    n = d.shape[0]
    if 2 * n > state.buffer_size:
        raise BufferOverflowError(
            f"{n} points need {2 * n} samples but the buffer holds {state.buffer_size}"
        )
    positive = np.clip(state.scale * d, -1.0, 1.0)
    state.buffer[:n] = positive
    state.buffer[n : 2 * n] = -positive
    state.readable_len = 2 * n
    if state.readable_len > 0:
        state.phase = state.phase % state.readable_len
    else:
        state.phase = 0.0
    return state


def wavetable_render(state: WavetableState, sample_rate_hz: float, nframes: int) -> np.ndarray:
    """Scan the readable region for ``nframes`` frames, advancing the phase.

    Linear interpolation between adjacent readable samples, wrapping from
    index readable_len - 1 back to 0; the phase advances by
    frequency_hz * readable_len / sample_rate_hz per frame so one full scan
    takes exactly 1 / frequency_hz seconds regardless of N. An empty
    readable region yields silence and leaves the phase untouched.
    """
    length = state.readable_len
    if length == 0:
        return np.zeros(nframes, dtype=np.float64)
    increment = state.frequency_hz * length / sample_rate_hz
    phases = (state.phase + increment * np.arange(nframes, dtype=np.float64)) % length
    i0 = phases.astype(np.int64) % length
    i1 = (i0 + 1) % length
    frac = phases - np.floor(phases)
    table = state.buffer
    block = table[i0] * (1.0 - frac) + table[i1] * frac
    state.phase = (state.phase + increment * nframes) % length
    return block
