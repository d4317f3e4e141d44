"""Fire-and-forget OSC sender for per-generation objective matrices.

Wire schema (OSC 1.0, big-endian, 4-byte aligned):

    /sonopt/front  ,ii f*2N   int32 generation, int32 N, 2N float32
    /sonopt/param  ,sf        parameter name, float32 value

Sending is synchronous UDP with no acknowledgements: losing a datagram
degrades the sonification, never the optimization run driving it.
"""

from __future__ import annotations

import math
import socket
import struct
from typing import Iterable, Sequence

DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 9000
FRONT_ADDRESS = "/sonopt/front"
PARAM_ADDRESS = "/sonopt/param"
LIVE_PARAMS = frozenset(
    {"sample_value_scaling", "oscillator_hz", "fundamental_hz", "gain_p1", "gain_p2"}
)
MAX_PACKET_BYTES = 60 * 1024


def _osc_string(text: str) -> bytes:
    raw = text.encode("ascii") + b"\x00"
    return raw + b"\x00" * (-len(raw) % 4)


def _as_rows(matrix) -> list[tuple[float, float]]:
    rows = []
    for row in matrix:
        pair = tuple(float(v) for v in row)
        if len(pair) != 2:
            raise ValueError(f"expected rows of two objectives, got {len(pair)}")
        rows.append(pair)
    return rows


def encode_front_datagram(generation_index: int, matrix) -> bytes:
    """Build one /sonopt/front datagram; validates before any byte is sent."""
    rows = _as_rows(matrix)
    n = len(rows)
    if n < 1:
        raise ValueError("front must contain at least one point")
    flat = [v for row in rows for v in row]
    if not all(math.isfinite(v) for v in flat):
        raise ValueError("front contains non-finite objective values")
    tags = "," + "ii" + "f" * (2 * n)
    packet = (
        _osc_string(FRONT_ADDRESS)
        + _osc_string(tags)
        + struct.pack(">ii", int(generation_index), n)
        + struct.pack(f">{2 * n}f", *flat)
    )
    if len(packet) > MAX_PACKET_BYTES:
        raise ValueError(f"front of {n} points exceeds the {MAX_PACKET_BYTES}-byte limit")
    return packet


def encode_param_datagram(name: str, value: float) -> bytes:
    if name not in LIVE_PARAMS:
        raise ValueError(f"{name!r} is not a live-tunable engine parameter")
    return _osc_string(PARAM_ADDRESS) + _osc_string(",sf") + _osc_string(name) + struct.pack(">f", value)


def send_front(host: str, port: int, generation_index: int, matrix) -> None:
    """Encode and send one generation's non-dominated objective matrix."""
    packet = encode_front_datagram(generation_index, matrix)
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as sock:
        sock.sendto(packet, (host, port))


def send_param(host: str, port: int, name: str, value: float) -> None:
    packet = encode_param_datagram(name, value)
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as sock:
        sock.sendto(packet, (host, port))
