"""Render run reports: matplotlib figures plus delimited spectrogram data.

One report directory per run, holding the final approximation set, both
sonograms (PNG and CSV), the final readable buffer and the final partial
amplitudes. Everything renders with the Agg backend so reports work on
headless machines.
"""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .analysis import spectrogram, spectrogram_to_csv
from .engine import RenderResult
from .events import FrontEvent, RunEventLog

SONOGRAM_WINDOW = 4096
SONOGRAM_HOP = 1024


def _save(fig, path: Path) -> None:
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _sonogram(audio: np.ndarray, sample_rate_hz: float, title: str, png: Path, csv_path: Path) -> None:
    if audio.shape[0] < SONOGRAM_WINDOW:
        return
    mags = spectrogram(audio, SONOGRAM_WINDOW, SONOGRAM_HOP)
    spectrogram_to_csv(mags, csv_path)
    fig, ax = plt.subplots(figsize=(9, 4))
    db = 20.0 * np.log10(np.maximum(mags.T, 1e-9))
    extent = (0.0, audio.shape[0] / sample_rate_hz, 0.0, sample_rate_hz / 2.0 / 1000.0)
    ax.imshow(db, origin="lower", aspect="auto", extent=extent, cmap="magma", vmin=-120, vmax=40)
    ax.set_xlabel("time [s]")
    ax.set_ylabel("frequency [kHz]")
    ax.set_ylim(0, 8)
    ax.set_title(title)
    _save(fig, png)


def write_report(result: RenderResult, log: RunEventLog, outdir: str | Path) -> list[Path]:
    """Write all figures and CSVs for one rendered run; returns the paths."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written: list[Path] = []

    fronts = [ev for ev in log.events if isinstance(ev, FrontEvent)]
    if fronts:
        final = fronts[-1].front.points
        fig, ax = plt.subplots(figsize=(5, 4))
        ax.scatter(final[:, 0], final[:, 1], s=12, color="tab:blue")
        ax.set_xlabel("objective 1")
        ax.set_ylabel("objective 2")
        ax.set_title(f"final approximation set ({log.algorithm or 'run'} / {log.problem or 'input'})")
        path = out / "approximation_front.png"
        _save(fig, path)
        written.append(path)

    for name, audio in (("path1", result.path1), ("path2", result.path2)):
        png = out / f"{name}_sonogram.png"
        csv_path = out / f"{name}_sonogram.csv"
        _sonogram(audio, result.sample_rate_hz, f"{name} sonogram", png, csv_path)
        if png.exists():
            written.extend([png, csv_path])

    if result.snapshots:
        last = result.snapshots[-1]
        fig, ax = plt.subplots(figsize=(8, 3))
        ax.plot(last.buffer, lw=0.8, color="tab:blue")
        ax.set_xlabel("buffer index")
        ax.set_ylabel("sample value")
        ax.set_title(f"readable buffer, generation {last.generation_index} ({last.readable_len} samples)")
        path = out / "final_buffer.png"
        _save(fig, path)
        written.append(path)

        fig, ax = plt.subplots(figsize=(8, 3))
        ax.bar(np.arange(1, last.partial_amplitudes.shape[0] + 1), last.partial_amplitudes, color="tab:red", width=1.0)
        ax.set_xlabel("harmonic partial")
        ax.set_ylabel("amplitude")
        ax.set_ylim(0, 1.05)
        ax.set_title(f"partial amplitudes, generation {last.generation_index}")
        path = out / "partial_amplitudes.png"
        _save(fig, path)
        written.append(path)

    return written
