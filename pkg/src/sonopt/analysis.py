"""Offline analysis: spectrogram export, flatness, RMS, front quality."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

from .errors import AudioTooShortError


def spectrogram(audio: np.ndarray, window: int, hop: int) -> np.ndarray:
    """Magnitude short-time Fourier transform, Hann windowed.

    Returns a (frames, window // 2 + 1) matrix with
    frames = floor((len - window) / hop) + 1.
    """
    x = np.asarray(audio, dtype=np.float64)
    if window <= 0 or window & (window - 1):
        raise ValueError(f"window must be a power of two, got {window}")
    if hop <= 0 or hop > window:
        raise ValueError(f"hop must lie in [1, window], got {hop}")
    if x.shape[0] < window:
        raise AudioTooShortError(f"{x.shape[0]} samples < window {window}")
    rows = (x.shape[0] - window) // hop + 1
    hann = np.hanning(window)
    offsets = np.arange(rows) * hop
    frames = x[offsets[:, None] + np.arange(window)[None, :]] * hann[None, :]
    return np.abs(np.fft.rfft(frames, axis=1))


def spectrogram_to_csv(matrix: np.ndarray, path: str | Path) -> None:
    """One row per time frame, comma-separated magnitudes."""
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        for row in np.asarray(matrix):
            writer.writerow([repr(float(v)) for v in row])


def rms(block: np.ndarray) -> float:
    x = np.asarray(block, dtype=np.float64)
    if x.size == 0:
        return 0.0
    return float(np.sqrt(np.mean(x * x)))


def spectral_flatness(block: np.ndarray) -> float:
    """Geometric over arithmetic mean of the magnitude spectrum (DC excluded).

    Near 0 for a pure tone, near 1 for noise. Returns NaN for silence,
    where the ratio is undefined.
    """
    mags = np.abs(np.fft.rfft(np.asarray(block, dtype=np.float64)))[1:]
    total = mags.sum()
    if total == 0.0:
        return float("nan")
    # Tiny floor keeps log of exact-zero bins finite without moving the ratio.
    floored = np.maximum(mags, 1e-300)
    geometric = np.exp(np.mean(np.log(floored)))
    return float(geometric / np.mean(mags))


def harmonic_flatness(
    block: np.ndarray, sample_rate_hz: float, fundamental_hz: float, max_harmonic: int = 31
) -> float:
    """Flatness of the low harmonic envelope of a periodic voice.

    Geometric over arithmetic mean of the magnitude spectrum sampled at
    the odd harmonics of the fundamental up to ``max_harmonic`` (2.5 kHz
    at the defaults). Odd only: the shape voice's mirrored buffer is
    half-wave symmetric, so its even harmonics are structurally zero, and
    a full-spectrum flatness of an exactly periodic signal degenerates to
    the numerical noise between harmonics. Near 0 when the fundamental
    dominates, larger when the envelope is even (buzzier timbre). NaN for
    silence.
    """
    x = np.asarray(block, dtype=np.float64)
    mags = np.abs(np.fft.rfft(x))
    ks = np.arange(1, max_harmonic + 1, 2)
    bins = np.round(ks * fundamental_hz * x.shape[0] / sample_rate_hz).astype(np.int64)
    bins = bins[bins < mags.shape[0]]
    h = mags[bins]
    if h.sum() == 0.0:
        return float("nan")
    floored = np.maximum(h, 1e-300)
    return float(np.exp(np.mean(np.log(floored))) / h.mean())


def band_energy_fraction(block: np.ndarray, sample_rate_hz: float, lo_hz: float, hi_hz: float) -> float:
    """Fraction of total spectral energy inside [lo_hz, hi_hz]."""
    spectrum = np.abs(np.fft.rfft(np.asarray(block, dtype=np.float64)))
    energy = spectrum**2
    freqs = np.fft.rfftfreq(len(block), d=1.0 / sample_rate_hz)
    total = energy.sum()
    if total == 0.0:
        return 0.0
    inside = energy[(freqs >= lo_hz) & (freqs <= hi_hz)].sum()
    return float(inside / total)


def fft_peak_hz(block: np.ndarray, sample_rate_hz: float, window: int = 4096) -> float:
    """Frequency of the strongest bin of a Hann-windowed FFT of the block head."""
    x = np.asarray(block, dtype=np.float64)
    if x.shape[0] < window:
        raise AudioTooShortError(f"{x.shape[0]} samples < window {window}")
    mags = np.abs(np.fft.rfft(x[:window] * np.hanning(window)))
    mags[0] = 0.0
    return float(np.argmax(mags) * sample_rate_hz / window)


def igd(front: np.ndarray, reference: np.ndarray) -> float:
    """Inverted generational distance: mean over reference points of the
    distance to the nearest obtained point (lower is better)."""
    f = np.asarray(front, dtype=np.float64)
    r = np.asarray(reference, dtype=np.float64)
    diffs = r[:, None, :] - f[None, :, :]
    dists = np.sqrt((diffs**2).sum(axis=2))
    return float(dists.min(axis=1).mean())
