"""WebSocket control surface: parameter sets in, state frames out.

Inbound messages are JSON ``{"set": {"param": <name>, "value": <number>}}``
restricted to the live-tunable parameter set; anything else earns an error
frame on the same connection, which stays open. Outbound state frames are
broadcast to every client at a capped rate; the buffer array rides along
only on generation changes while partial amplitudes are in every frame.
"""

from __future__ import annotations

import asyncio
import json
import logging
import threading

try:
    from websockets.asyncio.server import serve
except ImportError:  # older websockets releases
    from websockets import serve  # type: ignore

from .engine import LiveSession

log = logging.getLogger(__name__)

DEFAULT_CONTROL_PORT = 8080
FRAME_HZ = 20.0


class ControlServer:
    """Runs the asyncio WebSocket endpoint on its own thread."""

    def __init__(
        self,
        session: LiveSession,
        host: str = "127.0.0.1",
        port: int = DEFAULT_CONTROL_PORT,
        frame_hz: float = FRAME_HZ,
    ):
        self.session = session
        self.host = host
        self.port = port
        self.frame_hz = frame_hz
        self._clients: set = set()
        self._loop: asyncio.AbstractEventLoop | None = None
        self._stopped: asyncio.Event | None = None
        self._ready = threading.Event()
        self._thread: threading.Thread | None = None
        self._last_buffer_generation = -2

    def _state_frame(self, include_buffer: bool) -> str | None:
        state = self.session.published_state
        if not state:
            return None
        frame = {
            "generation_index": state["generation_index"],
            "partials": state["partials"],
            "params": state["params"],
            "rms": state["rms"],
        }
        if include_buffer:
            frame["buffer"] = state.get("buffer", [])
        return json.dumps(frame)

    async def _broadcast_loop(self) -> None:
        period = 1.0 / self.frame_hz
        while True:
            state = self.session.published_state
            generation = state.get("generation_index", -1) if state else -1
            include_buffer = generation != self._last_buffer_generation
            text = self._state_frame(include_buffer)
            if text is not None and self._clients:
                self._last_buffer_generation = generation
                await asyncio.gather(
                    *(self._safe_send(ws, text) for ws in list(self._clients))
                )
            await asyncio.sleep(period)

    @staticmethod
    async def _safe_send(ws, text: str) -> None:
        try:
            await ws.send(text)
        except Exception:
            pass

    async def _handle_message(self, ws, raw: str) -> None:
        try:
            msg = json.loads(raw)
            setter = msg["set"]
            name = str(setter["param"])
            value = float(setter["value"])
        except Exception:
            await self._safe_send(ws, json.dumps({"error": "bad_message"}))
            return
        if not self.session.submit_param(name, value):
            await self._safe_send(ws, json.dumps({"error": "unknown_param", "param": name}))

    async def _handler(self, ws) -> None:
        self._clients.add(ws)
        hello = self._state_frame(include_buffer=True)
        if hello is not None:
            await self._safe_send(ws, hello)
        try:
            async for raw in ws:
                await self._handle_message(ws, raw)
        except Exception:
            pass
        finally:
            self._clients.discard(ws)

    async def _main(self) -> None:
        self._loop = asyncio.get_running_loop()
        self._stopped = asyncio.Event()
        async with serve(self._handler, self.host, self.port) as server:
            self.port = server.sockets[0].getsockname()[1]
            broadcaster = asyncio.ensure_future(self._broadcast_loop())
            self._ready.set()
            try:
                await self._stopped.wait()
            finally:
                broadcaster.cancel()

    def start(self) -> None:
        self._thread = threading.Thread(
            target=lambda: asyncio.run(self._main()), name="control-server", daemon=True
        )
        self._thread.start()
        if not self._ready.wait(timeout=5.0):
            raise RuntimeError("control server failed to start")
        log.info("control endpoint on ws://%s:%d", self.host, self.port)

    def stop(self) -> None:
        if self._loop is not None and self._stopped is not None:
            self._loop.call_soon_threadsafe(self._stopped.set)
        if self._thread is not None:
            self._thread.join(timeout=5.0)
