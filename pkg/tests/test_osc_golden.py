"""The engine encoder is pinned to the checked-in wire fixtures.

External clients prove wire compatibility against the same files, so any
drift here is a protocol break, not a refactor.
"""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from sonopt.osc import decode_packet, encode_front

GOLDEN_DIR = Path(__file__).resolve().parent.parent / "fixtures" / "osc_golden"


def test_encoder_matches_golden_bytes():
    manifest = json.loads((GOLDEN_DIR / "manifest.json").read_text())
    assert len(manifest) == 100
    for i, entry in enumerate(manifest):
        expected = (GOLDEN_DIR / f"front_{i:03d}.bin").read_bytes()
        got = encode_front(entry["generation"], np.array(entry["points"]))
        assert got == expected, f"fixture {i} drifted"


def test_golden_packets_decode():
    manifest = json.loads((GOLDEN_DIR / "manifest.json").read_text())
    for i, entry in enumerate(manifest):
        msg = decode_packet((GOLDEN_DIR / f"front_{i:03d}.bin").read_bytes())
        assert msg.generation_index == entry["generation"]
        assert msg.count == len(entry["points"])
