"""Recurrence sonification: repeated objective vectors drive harmonic partials.

Points of the current generation that already appeared in the previous one
raise the amplitude of the like-indexed harmonic of a user-set fundamental:
index 0 (upper-left end of the sorted front) maps to the fundamental, index
k to the (k+1)-th harmonic. Amplitude grows linearly with the number of
consecutive recurrent generations and resets to zero the first generation a
point fails to recur, so the voice is silent whenever nothing recurs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import IndexOutOfRangeError, NonConsecutiveError
from .front import GenerationFront

TWO_PI = 2.0 * np.pi


@dataclass(frozen=True)
class RecurrenceReport:
    """Indices of the current front that also occur in the previous front."""

    generation_index: int
    recurrent_indices: frozenset[int]
    epsilon: float


@dataclass
class PartialBank:
    """Per-partial recurrence counters, amplitudes and oscillator phases.

    The invariant amplitudes[k] == min(1, counters[k] * increment) holds
    after every update. Phases run free from engine start; they advance
    even while a partial is silent so returning amplitude does not snap
    the phase.
    """

    max_partials: int
    fundamental_hz: float = 80.0
    increment: float = 0.05
    counters: np.ndarray = field(init=False)
    amplitudes: np.ndarray = field(init=False)
    phases: np.ndarray = field(init=False)

    def __post_init__(self):
        self.counters = np.zeros(self.max_partials, dtype=np.int64)
        self.amplitudes = np.zeros(self.max_partials, dtype=np.float64)
        self.phases = np.zeros(self.max_partials, dtype=np.float64)


def detect_recurrence(prev: GenerationFront, cur: GenerationFront, epsilon: float) -> RecurrenceReport:
    """Mark every index of ``cur`` whose point appears anywhere in ``prev``.

    A point matches when both normalized coordinates agree within
    ``epsilon``; one previous point may witness several current indices.
    Only adjacent generations are comparable.
    """
    if prev.generation_index + 1 != cur.generation_index:
        raise NonConsecutiveError(
            f"generations {prev.generation_index} and {cur.generation_index} are not consecutive"
        )
    cp = cur.points
    pp = prev.points
    close = (np.abs(cp[:, None, 0] - pp[None, :, 0]) <= epsilon) & (
        np.abs(cp[:, None, 1] - pp[None, :, 1]) <= epsilon
    )
    hits = np.nonzero(close.any(axis=1))[0]
    return RecurrenceReport(
        generation_index=cur.generation_index,
        recurrent_indices=frozenset(int(i) for i in hits),
        epsilon=epsilon,
    )


def throttle_recurrence(report: RecurrenceReport, keep_fraction: float, rng_seed: int) -> RecurrenceReport:
    """Pass only a uniformly sampled fraction of the recurrent indices.

    The subset size is keep_fraction * |indices| rounded half-up, drawn
    without replacement from a generator seeded by (rng_seed,
    generation_index), so a fixed seed always yields the same subset for a
    given generation.
    """
    indices = sorted(report.recurrent_indices)
    keep = int(np.floor(keep_fraction * len(indices) + 0.5))
    keep = max(0, min(keep, len(indices)))
    if keep == len(indices):
        return report
    rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([rng_seed, report.generation_index])))
    chosen = rng.choice(len(indices), size=keep, replace=False) if keep else np.empty(0, dtype=np.int64)
    survivors = frozenset(indices[int(i)] for i in chosen)
    return RecurrenceReport(
        generation_index=report.generation_index,
        recurrent_indices=survivors,
        epsilon=report.epsilon,
    )


def update_partials(bank: PartialBank, report: RecurrenceReport) -> PartialBank:
    """Advance recurrence counters and recompute amplitudes.

    Recurrent indices gain one consecutive-generation count; all others
    reset to zero. Amplitude is min(1, count * increment).
    """
    if report.recurrent_indices:
        worst = max(report.recurrent_indices)
        if worst >= bank.max_partials:
            raise IndexOutOfRangeError(
                f"recurrent index {worst} exceeds the {bank.max_partials}-partial bank"
            )
    mask = np.zeros(bank.max_partials, dtype=bool)
    if report.recurrent_indices:
        mask[sorted(report.recurrent_indices)] = True
    bank.counters[mask] += 1
    bank.counters[~mask] = 0
    bank.amplitudes = np.minimum(1.0, bank.counters * bank.increment)
    return bank


def additive_render(bank: PartialBank, sample_rate_hz: float, nframes: int, master_gain: float = 1.0) -> np.ndarray:
    """Sum sine partials at (k+1) * fundamental for ``nframes`` frames.

    Partials whose frequency reaches the Nyquist limit are muted rather
    than aliased. With every amplitude at zero the block is exact silence.
    Per-partial phases stay continuous across blocks and advance whether
    or not the partial is audible.
    """
    freqs = (np.arange(bank.max_partials, dtype=np.float64) + 1.0) * bank.fundamental_hz
    audible = (freqs < sample_rate_hz / 2.0) & (bank.amplitudes > 0.0)
    phase_step = TWO_PI * freqs / sample_rate_hz
    if not audible.any():
        bank.phases = (bank.phases + phase_step * nframes) % TWO_PI
        return np.zeros(nframes, dtype=np.float64)
    t = np.arange(nframes, dtype=np.float64)
    idx = np.nonzero(audible)[0]
    # (active partials, nframes) sine matrix collapsed by the amplitude row.
    args = bank.phases[idx, None] + phase_step[idx, None] * t[None, :]
    block = (bank.amplitudes[idx, None] * np.sin(args)).sum(axis=0) * master_gain
    bank.phases = (bank.phases + phase_step * nframes) % TWO_PI
    return block
