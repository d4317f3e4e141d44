"""Minimal deterministic RIFF/WAVE writer and reader (mono).

Supports 16-bit PCM (the default deliverable) and 32-bit IEEE float
(lossless, used for golden-file comparisons). No dithering: quantization
is plain round-to-nearest so identical input always produces identical
bytes.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

_FMT_PCM = 1
_FMT_FLOAT = 3


def encode_wav(samples: np.ndarray, sample_rate_hz: float, fmt: str = "pcm16") -> bytes:
    """Serialize a mono float block (values in [-1, 1]) to WAV bytes."""
    x = np.asarray(samples, dtype=np.float64)
    rate = int(round(sample_rate_hz))
    if fmt == "pcm16":
        data = np.clip(np.rint(x * 32767.0), -32768, 32767).astype("<i2").tobytes()
        audio_format, bits = _FMT_PCM, 16
    elif fmt == "float32":
        data = x.astype("<f4").tobytes()
        audio_format, bits = _FMT_FLOAT, 32
    else:
        raise ValueError(f"unsupported wav format {fmt!r}")
    block_align = bits // 8
    header = struct.pack(
        "<4sI4s4sIHHIIHH4sI",
        b"RIFF",
        36 + len(data),
        b"WAVE",
        b"fmt ",
        16,
        audio_format,
        1,
        rate,
        rate * block_align,
        block_align,
        bits,
        b"data",
        len(data),
    )
    return header + data


def write_wav(path: str | Path, samples: np.ndarray, sample_rate_hz: float, fmt: str = "pcm16") -> None:
    Path(path).write_bytes(encode_wav(samples, sample_rate_hz, fmt))


def read_wav(path: str | Path) -> tuple[np.ndarray, int]:
    """Read a mono WAV written by this module; returns (float64 samples, rate)."""
    raw = Path(path).read_bytes()
    if raw[:4] != b"RIFF" or raw[8:12] != b"WAVE":
        raise ValueError("not a RIFF/WAVE file")
    audio_format, channels, rate, _, _, bits = struct.unpack("<HHIIHH", raw[20:36])
    if channels != 1:
        raise ValueError("only mono files are supported")
    # Locate the data chunk (fmt may be followed by other chunks).
    pos = 12
    data = None
    while pos + 8 <= len(raw):
        cid, size = struct.unpack("<4sI", raw[pos : pos + 8])
        if cid == b"data":
            data = raw[pos + 8 : pos + 8 + size]
            break
        pos += 8 + size + (size & 1)
    if data is None:
        raise ValueError("no data chunk found")
    if audio_format == _FMT_PCM and bits == 16:
        samples = np.frombuffer(data, dtype="<i2").astype(np.float64) / 32767.0
    elif audio_format == _FMT_FLOAT and bits == 32:
        samples = np.frombuffer(data, dtype="<f4").astype(np.float64)
    else:
        raise ValueError(f"unsupported format tag {audio_format} / {bits} bits")
    return samples, rate
