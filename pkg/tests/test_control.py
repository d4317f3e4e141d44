from __future__ import annotations

import asyncio
import json

import numpy as np
import pytest

from sonopt.control import ControlServer
from sonopt.engine import LiveSession, SessionPump
from sonopt.front import RawFront
from sonopt.params import EngineParams

try:
    from websockets.asyncio.client import connect
except ImportError:
    from websockets import connect  # type: ignore

FAST = EngineParams(sample_rate_hz=8000.0)


@pytest.fixture
def live_stack():
    session = LiveSession(FAST)
    pump = SessionPump(session, block_frames=256)
    server = ControlServer(session, port=0, frame_hz=40.0)
    server.start()
    pump.start()
    yield session, server
    pump.stop()
    pump.join(timeout=2.0)
    server.stop()


def ws_url(server):
    return f"ws://127.0.0.1:{server.port}"


async def next_frame(ws, predicate=lambda frame: True, timeout=5.0):
    loop = asyncio.get_running_loop()
    deadline = loop.time() + timeout
    while True:
        remaining = deadline - loop.time()
        frame = json.loads(await asyncio.wait_for(ws.recv(), timeout=max(0.01, remaining)))
        if predicate(frame):
            return frame


def test_set_message_reflected_in_state_frames(live_stack):
    session, server = live_stack

    async def scenario():
        async with connect(ws_url(server)) as ws:
            await ws.send(json.dumps({"set": {"param": "gain_p1", "value": 0.125}}))
            frame = await next_frame(ws, lambda f: f.get("params", {}).get("gain_p1") == 0.125)
            assert frame["params"]["gain_p1"] == 0.125

    asyncio.run(scenario())


def test_unknown_param_yields_error_frame_and_connection_survives(live_stack):
    _, server = live_stack

    async def scenario():
        async with connect(ws_url(server)) as ws:
            await ws.send(json.dumps({"set": {"param": "does_not_exist", "value": 1.0}}))
            frame = await next_frame(ws, lambda f: "error" in f)
            assert frame["error"] == "unknown_param"
            # Connection must stay usable afterwards.
            await ws.send(json.dumps({"set": {"param": "gain_p2", "value": 0.05}}))
            await next_frame(ws, lambda f: f.get("params", {}).get("gain_p2") == 0.05)

    asyncio.run(scenario())


def test_non_live_tunable_rejected(live_stack):
    _, server = live_stack

    async def scenario():
        async with connect(ws_url(server)) as ws:
            await ws.send(json.dumps({"set": {"param": "buffer_size_p1", "value": 512}}))
            frame = await next_frame(ws, lambda f: "error" in f)
            assert frame["error"] == "unknown_param"

    asyncio.run(scenario())


def test_malformed_json_yields_bad_message(live_stack):
    _, server = live_stack

    async def scenario():
        async with connect(ws_url(server)) as ws:
            await ws.send("this is not json")
            frame = await next_frame(ws, lambda f: "error" in f)
            assert frame["error"] == "bad_message"

    asyncio.run(scenario())


def test_front_state_broadcast_to_two_clients(live_stack):
    session, server = live_stack
    session.submit_front(RawFront(0, np.array([[0.0, 1.0], [0.3, 0.2], [1.0, 0.0]])))

    async def scenario():
        async with connect(ws_url(server)) as a, connect(ws_url(server)) as b:
            fa = await next_frame(a, lambda f: f.get("generation_index") == 0)
            fb = await next_frame(b, lambda f: f.get("generation_index") == 0)
            assert fa["generation_index"] == fb["generation_index"] == 0
            assert len(fa["partials"]) == FAST.num_partials
            assert fa["rms"]["p1"] > 0.0

    asyncio.run(scenario())


def test_buffer_sent_on_generation_change_only(live_stack):
    session, server = live_stack

    async def scenario():
        async with connect(ws_url(server)) as ws:
            session.submit_front(RawFront(0, np.array([[0.0, 1.0], [0.3, 0.2], [1.0, 0.0]])))
            with_buffer = await next_frame(
                ws, lambda f: f.get("generation_index") == 0 and "buffer" in f
            )
            assert len(with_buffer["buffer"]) == 6
            # Steady state: same generation, frames stop carrying the buffer.
            steady = await next_frame(
                ws, lambda f: f.get("generation_index") == 0 and "buffer" not in f
            )
            assert "partials" in steady

    asyncio.run(scenario())
