"""Open Sound Control transport: wire codec, sequencing, UDP server.

The engine understands exactly two OSC 1.0 addresses:

    /sonopt/front  ,ii then 2N floats   int32 generation, int32 N,
                                        then f1_0 f2_0 f1_1 f2_1 ...
    /sonopt/param  ,sf                  live-tunable name, float value

Everything is big-endian and 4-byte aligned per OSC 1.0. Datagrams above
60 KB are rejected so the protocol stays single-packet and stateless.
"""

from __future__ import annotations

import logging
import socket
import struct
import threading
from dataclasses import dataclass

import numpy as np

from .errors import CountMismatchError, MalformedPacketError, UnknownAddressError
from .front import RawFront
from .params import LIVE_TUNABLE

log = logging.getLogger(__name__)

FRONT_ADDRESS = "/sonopt/front"
PARAM_ADDRESS = "/sonopt/param"
MAX_PACKET_BYTES = 60 * 1024
DEFAULT_HOST = "127.0.0.1"
DEFAULT_PORT = 9000


@dataclass(frozen=True)
class OscFrontMessage:
    generation_index: int
    count: int
    points: tuple[tuple[float, float], ...]


@dataclass(frozen=True)
class OscParamMessage:
    name: str
    value: float


def _pad(data: bytes) -> bytes:
    return data + b"\x00" * (-len(data) % 4)


def _encode_string(text: str) -> bytes:
    return _pad(text.encode("ascii") + b"\x00")


def encode_front(generation_index: int, points: np.ndarray) -> bytes:
    """Encode one generation's objective matrix as a /sonopt/front datagram."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] < 1:
        raise ValueError(f"expected an (N, 2) matrix with N >= 1, got shape {pts.shape}")
    n = pts.shape[0]
    tags = "," + "ii" + "f" * (2 * n)
    payload = struct.pack(">ii", int(generation_index), n)
    payload += struct.pack(f">{2 * n}f", *pts.reshape(-1))
    packet = _encode_string(FRONT_ADDRESS) + _encode_string(tags) + payload
    if len(packet) > MAX_PACKET_BYTES:
        raise ValueError(f"front of {n} points exceeds the {MAX_PACKET_BYTES}-byte packet limit")
    return packet


def encode_param(name: str, value: float) -> bytes:
    if name not in LIVE_TUNABLE:
        raise ValueError(f"{name!r} is not live-tunable")
    return _encode_string(PARAM_ADDRESS) + _encode_string(",sf") + _encode_string(name) + struct.pack(">f", value)


class _Reader:
    """Cursor over packet bytes enforcing OSC alignment rules."""

    def __init__(self, data: bytes):
        self.data = data
        self.pos = 0

    def take_string(self) -> str:
        end = self.data.find(b"\x00", self.pos)
        if end < 0:
            raise MalformedPacketError("unterminated string")
        raw = self.data[self.pos : end]
        try:
            text = raw.decode("ascii")
        except UnicodeDecodeError as exc:
            raise MalformedPacketError("non-ascii string") from exc
        new_pos = end + 1
        new_pos += -new_pos % 4
        if new_pos > len(self.data):
            raise MalformedPacketError("string padding runs past packet end")
        if self.data[end + 1 : new_pos] != b"\x00" * (new_pos - end - 1):
            raise MalformedPacketError("string padding is not zeroed")
        self.pos = new_pos
        return text

    def take_int32(self) -> int:
        if self.pos + 4 > len(self.data):
            raise MalformedPacketError("truncated int32")
        (value,) = struct.unpack_from(">i", self.data, self.pos)
        self.pos += 4
        return value

    def take_float32(self) -> float:
        if self.pos + 4 > len(self.data):
            raise MalformedPacketError("truncated float32")
        (value,) = struct.unpack_from(">f", self.data, self.pos)
        self.pos += 4
        return value


def decode_packet(data: bytes) -> OscFrontMessage | OscParamMessage:
    """Decode one datagram into a front or parameter message.

    Raises:
        MalformedPacketError: alignment, padding, type-tag or value problems.
        UnknownAddressError: a well-formed address the engine does not serve.
        CountMismatchError: declared point count disagrees with the
            arguments present, or the packet exceeds the size limit.
    """
    if len(data) > MAX_PACKET_BYTES:
        raise CountMismatchError(f"packet of {len(data)} bytes exceeds the size limit")
    if len(data) == 0 or len(data) % 4 != 0:
        raise MalformedPacketError("packet length must be a positive multiple of 4")
    reader = _Reader(data)
    address = reader.take_string()
    if not address.startswith("/"):
        raise MalformedPacketError("address must start with '/'")
    if address not in (FRONT_ADDRESS, PARAM_ADDRESS):
        raise UnknownAddressError(address)
    tags = reader.take_string()
    if not tags.startswith(","):
        raise MalformedPacketError("type-tag string must start with ','")
    tags = tags[1:]

    if address == FRONT_ADDRESS:
        if len(tags) < 2 or tags[0] != "i" or tags[1] != "i":
            raise MalformedPacketError("front message must start with two int32 arguments")
        float_tags = tags[2:]
        if any(t != "f" for t in float_tags):
            raise MalformedPacketError("front values must all be float32")
        generation_index = reader.take_int32()
        n = reader.take_int32()
        if n < 1:
            raise CountMismatchError(f"declared point count {n} < 1")
        if len(float_tags) != 2 * n:
            raise CountMismatchError(
                f"declared {n} points but {len(float_tags)} float arguments are present"
            )
        values = [reader.take_float32() for _ in range(2 * n)]
        if reader.pos != len(data):
            raise MalformedPacketError("trailing bytes after arguments")
        points = tuple((values[2 * i], values[2 * i + 1]) for i in range(n))
        return OscFrontMessage(generation_index=generation_index, count=n, points=points)

    if tags != "sf":
        raise MalformedPacketError("param message must carry exactly one string and one float")
    name = reader.take_string()
    value = reader.take_float32()
    if reader.pos != len(data):
        raise MalformedPacketError("trailing bytes after arguments")
    if name not in LIVE_TUNABLE:
        raise MalformedPacketError(f"unknown parameter name {name!r}")
    return OscParamMessage(name=name, value=value)


class FrontSequencer:
    """Orders datagram fronts into a strictly increasing generation stream.

    Late or duplicate generations are dropped; gaps are tolerated and only
    logged (the engine skips recurrence across a gap by itself because the
    consecutive-index precondition fails).
    """

    def __init__(self, source_id: str = "osc"):
        self.source_id = source_id
        self.last_accepted = -1

    def push(self, message: OscFrontMessage) -> RawFront | None:
        gen = message.generation_index
        if gen <= self.last_accepted:
            log.warning("dropping late/duplicate front for generation %d", gen)
            return None
        if self.last_accepted >= 0 and gen != self.last_accepted + 1:
            log.warning(
                "generation gap: %d -> %d (recurrence will reset)", self.last_accepted, gen
            )
        self.last_accepted = gen
        return RawFront(
            generation_index=gen,
            points=np.asarray(message.points, dtype=np.float64),
            source_id=self.source_id,
        )


class OscServer:
    """UDP listener feeding a live session's message queue.

    Malformed input of any kind is logged and dropped; nothing a sender
    does can raise past the receive loop.
    """

    def __init__(self, session, host: str = DEFAULT_HOST, port: int = DEFAULT_PORT):
        self.session = session
        self.sequencer = FrontSequencer()
        self._sock = socket.socket(socket.AF_INET, socket.SOCK_DGRAM)
        self._sock.bind((host, port))
        self._sock.settimeout(0.25)
        self.host, self.port = self._sock.getsockname()
        self._stop = threading.Event()
        self._thread: threading.Thread | None = None

    def handle_datagram(self, data: bytes) -> None:
        try:
            message = decode_packet(data)
        except Exception as exc:
            log.warning("dropping undecodable packet: %s", exc)
            return
        if isinstance(message, OscParamMessage):
            self.session.submit_param(message.name, message.value)
            return
        front = self.sequencer.push(message)
        if front is not None:
            self.session.submit_front(front)

    def _run(self) -> None:
        while not self._stop.is_set():
            try:
                data, _ = self._sock.recvfrom(65536)
            except socket.timeout:
                continue
            except OSError:
                break
            self.handle_datagram(data)

    def start(self) -> None:
        self._thread = threading.Thread(target=self._run, name="osc-server", daemon=True)
        self._thread.start()
        log.info("OSC server listening on %s:%d", self.host, self.port)

    def stop(self) -> None:
        self._stop.set()
        if self._thread is not None:
            self._thread.join(timeout=2.0)
        self._sock.close()


def send_packet(data: bytes, host: str = DEFAULT_HOST, port: int = DEFAULT_PORT) -> None:
    """Fire-and-forget datagram send (loopback helper for tests and tools)."""
    with socket.socket(socket.AF_INET, socket.SOCK_DGRAM) as sock:
        sock.sendto(data, (host, port))
