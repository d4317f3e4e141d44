"""Two-path sonification engine: state updates, mixing, offline rendering.

One engine owns all DSP state (wavetable voice, partial bank, previous
front). Fronts and parameter changes arrive as messages; offline rendering
walks a RunEventLog through exactly the same code path the live session
uses, so a rendered file is a bit-exact record of what the live engine
would have played.
"""

from __future__ import annotations

import logging
import threading
import time
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .analysis import rms
from .errors import LengthMismatchError, SonoptError
from .events import FrontEvent, ParamEvent, RunEventLog
from .front import GenerationFront, RawFront, nondominated_filter, normalize, validate_raw
from .params import EngineParams
from .partials import PartialBank, RecurrenceReport, additive_render, detect_recurrence, throttle_recurrence, update_partials
from .wavetable import WavetableState, chord_distances, chord_of, wavetable_render, write_wavetable

log = logging.getLogger(__name__)


def mix(block1: np.ndarray, block2: np.ndarray, gain1: float, gain2: float) -> np.ndarray:
    """Per-path gains, sum, hard clamp to [-1, 1]."""
    b1 = np.asarray(block1, dtype=np.float64)
    b2 = np.asarray(block2, dtype=np.float64)
    if b1.shape[0] != b2.shape[0]:
        raise LengthMismatchError(f"block lengths differ: {b1.shape[0]} vs {b2.shape[0]}")
    return np.clip(gain1 * b1 + gain2 * b2, -1.0, 1.0)


@dataclass(frozen=True)
class GenerationSnapshot:
    """Observable engine state right after one generation was rendered."""

    generation_index: int
    readable_len: int
    buffer: np.ndarray
    partial_amplitudes: np.ndarray
    rms_p1: float
    rms_p2: float

    def as_dict(self) -> dict:
        return {
            "generation_index": self.generation_index,
            "readable_len": self.readable_len,
            "buffer": self.buffer.tolist(),
            "partials": self.partial_amplitudes.tolist(),
            "rms_p1": self.rms_p1,
            "rms_p2": self.rms_p2,
        }


class SonificationEngine:
    """Holds both voices and advances them one front at a time.

    Not thread safe by design: a single render context owns the engine and
    applies queued messages between blocks (see MessageQueue/LiveSession).
    """

    def __init__(self, params: EngineParams | None = None, filter_nondominated: bool = True):
        self.params = (params or EngineParams()).validate()
        self.filter_nondominated = filter_nondominated
        self.wavetable = WavetableState.create(
            self.params.buffer_size_p1,
            scale=self.params.sample_value_scaling,
            frequency_hz=self.params.oscillator_hz,
        )
        self.bank = PartialBank(
            max_partials=self.params.num_partials,
            fundamental_hz=self.params.fundamental_hz,
            increment=self.params.partial_increment,
        )
        self.prev_front: GenerationFront | None = None
        self.generation_index: int = -1

    def set_param(self, name: str, value: float) -> None:
        """Apply one live-tunable change; KeyError for anything else."""
        self.params = self.params.with_param(name, value)
        self.wavetable.scale = self.params.sample_value_scaling
        self.wavetable.frequency_hz = self.params.oscillator_hz
        self.bank.fundamental_hz = self.params.fundamental_hz

    def process_front(self, raw: RawFront) -> GenerationFront:
        """Validate, filter, normalize and feed one generation to both paths.

        Recurrence only fires for strictly consecutive generation indices;
        after a gap the pair is skipped and all partial counters reset.
        """
        validate_raw(raw)
        pts = nondominated_filter(raw.points) if self.filter_nondominated else raw.points
        front = normalize(RawFront(raw.generation_index, pts, raw.source_id))

        chord = chord_of(front)
        distances = chord_distances(front, chord)
        write_wavetable(self.wavetable, distances)

        if self.prev_front is not None and self.prev_front.generation_index + 1 == front.generation_index:
            report = detect_recurrence(self.prev_front, front, self.params.recurrence_epsilon)
            if self.params.recurrence_keep < 1.0:
                report = throttle_recurrence(report, self.params.recurrence_keep, self.params.throttle_seed)
        else:
            report = RecurrenceReport(front.generation_index, frozenset(), self.params.recurrence_epsilon)
        update_partials(self.bank, report)

        self.prev_front = front
        self.generation_index = front.generation_index
        return front

    def render_block(self, nframes: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """Render both paths and the mix for one block; returns (mix, p1, p2)."""
        p1 = wavetable_render(self.wavetable, self.params.sample_rate_hz, nframes)
        p2 = additive_render(self.bank, self.params.sample_rate_hz, nframes, master_gain=1.0)
        return mix(p1, p2, self.params.gain_p1, self.params.gain_p2), p1, p2

    def snapshot(self, rms_p1: float = 0.0, rms_p2: float = 0.0) -> GenerationSnapshot:
        return GenerationSnapshot(
            generation_index=self.generation_index,
            readable_len=self.wavetable.readable_len,
            buffer=self.wavetable.readable(),
            partial_amplitudes=self.bank.amplitudes.copy(),
            rms_p1=rms_p1,
            rms_p2=rms_p2,
        )


@dataclass
class RenderResult:
    """Offline render of a whole run: audio streams plus per-generation state."""

    sample_rate_hz: float
    mixed: np.ndarray
    path1: np.ndarray
    path2: np.ndarray
    snapshots: list[GenerationSnapshot] = field(default_factory=list)


def render_run(log_events: RunEventLog, params: EngineParams | None = None) -> RenderResult:
    """Deterministically render a complete event log to audio.

    Per generation: parameter events are applied first, the front updates
    both paths, then seconds_per_generation of audio is rendered and mixed.
    Identical logs and params always produce bit-identical output.
    """
    p = (params or log_events.params).validate()
    engine = SonificationEngine(p)
    nframes = int(round(p.seconds_per_generation * p.sample_rate_hz))
    mixed_parts: list[np.ndarray] = []
    p1_parts: list[np.ndarray] = []
    p2_parts: list[np.ndarray] = []
    snapshots: list[GenerationSnapshot] = []
    for param_events, front_event in log_events.generations():
        for ev in param_events:
            engine.set_param(ev.name, ev.value)
        engine.process_front(front_event.front)
        mixed, p1, p2 = engine.render_block(nframes)
        mixed_parts.append(mixed)
        p1_parts.append(p1)
        p2_parts.append(p2)
        snapshots.append(engine.snapshot(rms_p1=rms(p1), rms_p2=rms(p2)))
    empty = np.zeros(0, dtype=np.float64)
    return RenderResult(
        sample_rate_hz=p.sample_rate_hz,
        mixed=np.concatenate(mixed_parts) if mixed_parts else empty,
        path1=np.concatenate(p1_parts) if p1_parts else empty,
        path2=np.concatenate(p2_parts) if p2_parts else empty,
        snapshots=snapshots,
    )


class MessageQueue:
    """Bounded hand-off from ingestion threads to the render context.

    Front messages beyond the bound drop oldest-first (the newest state is
    the one worth hearing); parameter messages are never dropped.
    """

    def __init__(self, max_fronts: int = 64):
        self._items: deque = deque()
        self._max_fronts = max_fronts
        self._front_count = 0
        self._lock = threading.Lock()

    def put_front(self, front: RawFront) -> None:
        with self._lock:
            if self._front_count >= self._max_fronts:
                for i, (kind, _) in enumerate(self._items):
                    if kind == "front":
                        del self._items[i]
                        self._front_count -= 1
                        log.warning("front queue full, dropped oldest front")
                        break
            self._items.append(("front", front))
            self._front_count += 1

    def put_param(self, name: str, value: float) -> None:
        with self._lock:
            self._items.append(("param", (name, value)))

    def drain(self) -> list[tuple[str, object]]:
        with self._lock:
            items = list(self._items)
            self._items.clear()
            self._front_count = 0
        return items


class LiveSession:
    """Pull-based block supplier around an engine.

    The audio backend (or the fallback pacing loop) calls next_block();
    queued fronts and parameter updates are applied at that block boundary
    only, so ingestion never touches DSP state mid-block. Fronts whose
    generation index is not strictly greater than the last accepted one are
    dropped here as well, covering in-process feeds that bypass the OSC
    sequencer.
    """

    def __init__(self, params: EngineParams | None = None, queue: MessageQueue | None = None):
        self.engine = SonificationEngine(params)
        self.queue = queue or MessageQueue()
        self.published_state: dict = {}
        self._last_generation = -1
        self._buffer_dirty = False

    def submit_front(self, front: RawFront) -> None:
        self.queue.put_front(front)

    def submit_param(self, name: str, value: float) -> bool:
        """Queue a live-tunable change; False if the name is not tunable."""
        try:
            self.engine.params.with_param(name, value)
        except KeyError:
            return False
        self.queue.put_param(name, value)
        return True

    def next_block(self, nframes: int) -> np.ndarray:
        for kind, payload in self.queue.drain():
            if kind == "param":
                name, value = payload
                try:
                    self.engine.set_param(name, value)
                except KeyError:
                    log.warning("ignoring unknown live parameter %r", name)
            else:
                if payload.generation_index <= self._last_generation:
                    log.warning(
                        "dropping stale front for generation %d", payload.generation_index
                    )
                    continue
                try:
                    self.engine.process_front(payload)
                except SonoptError as exc:
                    # A hostile or oversized (yet well-formed) front must
                    # never take the render context down.
                    log.warning(
                        "dropping unprocessable front for generation %d: %s",
                        payload.generation_index,
                        exc,
                    )
                    continue
                self._last_generation = payload.generation_index
                self._buffer_dirty = True
        mixed, p1, p2 = self.engine.render_block(nframes)
        self._publish(rms(p1), rms(p2))
        return mixed

    def _publish(self, rms_p1: float, rms_p2: float) -> None:
        state = {
            "generation_index": self.engine.generation_index,
            "params": self.engine.params.as_dict(),
            "partials": self.engine.bank.amplitudes.tolist(),
            "rms": {"p1": rms_p1, "p2": rms_p2},
        }
        if self._buffer_dirty:
            state["buffer"] = self.engine.wavetable.readable().tolist()
            self._buffer_dirty = False
        elif "buffer" in self.published_state:
            state["buffer"] = self.published_state["buffer"]
        # Plain attribute swap: readers on other threads always see a
        # complete dict, never a half-built one.
        self.published_state = state


class SessionPump:
    """Drives a live session at roughly real-time block pacing.

    Used when no audio backend is present: blocks are rendered on a thread
    and collected so the session can still be monitored and its audio
    written out afterwards. ``stop_after_generation`` ends the pump once
    the engine has processed that generation index.
    """

    def __init__(
        self,
        session: LiveSession,
        block_frames: int = 1024,
        stop_after_generation: int | None = None,
        realtime: bool = True,
    ):
        self.session = session
        self.block_frames = block_frames
        self.stop_after_generation = stop_after_generation
        self.realtime = realtime
        self.blocks: list[np.ndarray] = []
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    def _run(self) -> None:
        seconds_per_block = self.block_frames / self.session.engine.params.sample_rate_hz
        while not self._stop.is_set():
            started = time.monotonic()
            self.blocks.append(self.session.next_block(self.block_frames))
            if (
                self.stop_after_generation is not None
                and self.session.engine.generation_index >= self.stop_after_generation
            ):
                break
            if self.realtime:
                remaining = seconds_per_block - (time.monotonic() - started)
                if remaining > 0:
                    time.sleep(remaining)

    def start(self) -> None:
        self._thread = threading.Thread(target=self._run, name="session-pump", daemon=True)
        self._thread.start()

    def stop(self) -> None:
        self._stop.set()

    def join(self, timeout: float | None = None) -> None:
        if self._thread is not None:
            self._thread.join(timeout)

    @property
    def running(self) -> bool:
        return self._thread is not None and self._thread.is_alive()

    def audio(self) -> np.ndarray:
        if not self.blocks:
            return np.zeros(0, dtype=np.float64)
        return np.concatenate(self.blocks)


def open_audio_backend(session: LiveSession, block_frames: int = 1024):
    """Stream the session to the soundcard when a backend is importable.

    Falls back to None with a warning when no audio backend exists; the
    caller should then drive the session with a SessionPump instead.
    """
    try:
        import sounddevice  # type: ignore
    except Exception:
        log.warning("no audio backend available, falling back to offline rendering")
        return None

    def _callback(outdata, frames, _time, _status):
        outdata[:, 0] = session.next_block(frames)

    stream = sounddevice.OutputStream(
        samplerate=session.engine.params.sample_rate_hz,
        channels=1,
        blocksize=block_frames,
        callback=_callback,
    )
    stream.start()
    return stream
