// Loopback round trip against a protocol-faithful mock engine endpoint:
// real WebSockets, real timers, the 250 ms budget of the UI contract.

import { AddressInfo } from "node:net";
import { afterEach, beforeEach, describe, expect, it } from "vitest";
import { WebSocket, WebSocketServer } from "ws";

import { EngineClient, WebSocketLike } from "../src/client.js";
import { UiState } from "../src/store.js";

const LIVE_PARAMS = new Set([
  "sample_value_scaling",
  "oscillator_hz",
  "fundamental_hz",
  "gain_p1",
  "gain_p2",
]);

class MockEngine {
  server: WebSocketServer;
  params: Record<string, number> = {
    sample_value_scaling: 500,
    oscillator_hz: 80,
    fundamental_hz: 80,
    gain_p1: 0.3,
    gain_p2: 0.075,
  };
  received: Array<{ param: string; value: number }> = [];
  generation = 0;
  buffer: number[] = [];
  private timer: ReturnType<typeof setInterval>;

  constructor() {
    this.server = new WebSocketServer({ port: 0 });
    this.server.on("connection", (socket) => {
      socket.on("message", (raw) => {
        let msg: { set?: { param?: unknown; value?: unknown } };
        try {
          msg = JSON.parse(String(raw));
        } catch {
          socket.send(JSON.stringify({ error: "bad_message" }));
          return;
        }
        const param = String(msg.set?.param);
        const value = Number(msg.set?.value);
        if (!LIVE_PARAMS.has(param)) {
          socket.send(JSON.stringify({ error: "unknown_param", param }));
          return;
        }
        this.received.push({ param, value });
        this.params[param] = Math.fround(value); // float32 wire precision
      });
    });
    this.timer = setInterval(() => this.broadcast(), 50); // 20 Hz
  }

  port(): number {
    return (this.server.address() as AddressInfo).port;
  }

  broadcast(): void {
    const frame = JSON.stringify({
      generation_index: this.generation,
      partials: Array(100).fill(0),
      params: this.params,
      rms: { p1: 0.05, p2: 0 },
      buffer: this.buffer,
    });
    for (const client of this.server.clients) {
      if (client.readyState === WebSocket.OPEN) client.send(frame);
    }
  }

  async close(): Promise<void> {
    clearInterval(this.timer);
    for (const client of this.server.clients) client.terminate();
    await new Promise<void>((resolve) => this.server.close(() => resolve()));
  }
}

const factory = (url: string): WebSocketLike => new WebSocket(url) as unknown as WebSocketLike;

function waitFor(client: EngineClient, predicate: (s: UiState) => boolean, timeoutMs = 5000): Promise<UiState> {
  return new Promise((resolve, reject) => {
    if (predicate(client.getState())) return resolve(client.getState());
    const timer = setTimeout(() => {
      unsubscribe();
      reject(new Error(`timed out waiting for state (last: ${JSON.stringify(client.getState().params)})`));
    }, timeoutMs);
    const unsubscribe = client.onChange((state) => {
      if (predicate(state)) {
        clearTimeout(timer);
        unsubscribe();
        resolve(state);
      }
    });
  });
}

describe("loopback round trip", () => {
  let engine: MockEngine;
  let client: EngineClient;

  beforeEach(async () => {
    engine = new MockEngine();
    client = new EngineClient(`ws://127.0.0.1:${engine.port()}`, factory, { reconnectDelayMs: 50 });
    client.connect();
    await waitFor(client, (s) => s.connection === "open");
  });

  afterEach(async () => {
    client.close();
    await engine.close();
  });

  it("reflects a slider move in a state frame within 250 ms", async () => {
    await waitFor(client, (s) => s.params.gain_p1 !== undefined);
    const started = Date.now();
    expect(client.setParam("gain_p1", 0.125)).toBe(true);
    const state = await waitFor(
      client,
      (s) => Object.keys(s.pending).length === 0 && Math.abs(s.params.gain_p1 - 0.125) < 1e-6,
    );
    expect(Date.now() - started).toBeLessThan(250);
    expect(state.params.gain_p1).toBeCloseTo(0.125, 6);
  });

  it("round-trips every slider parameter exactly at wire precision", async () => {
    await waitFor(client, (s) => s.params.oscillator_hz !== undefined);
    const wanted: Record<string, number> = {
      sample_value_scaling: 42.5,
      oscillator_hz: 440,
      fundamental_hz: 55,
      gain_p1: 0.6,
      gain_p2: 0.075,
    };
    for (const [param, value] of Object.entries(wanted)) {
      client.setParam(param, value);
      const state = await waitFor(client, (s) => Math.abs(s.params[param] - Math.fround(value)) < 1e-9);
      expect(state.params[param]).toBe(Math.fround(value));
    }
  });

  it("never sends a value outside the slider bounds", async () => {
    await waitFor(client, (s) => s.params.gain_p1 !== undefined);
    client.setParam("gain_p1", 7.0);
    await waitFor(client, (s) => Math.abs(s.params.gain_p1 - 1.0) < 1e-9);
    client.setParam("oscillator_hz", -100);
    await waitFor(client, (s) => Math.abs(s.params.oscillator_hz - 20) < 1e-9);
    for (const { param, value } of engine.received) {
      if (param === "gain_p1") expect(value).toBeLessThanOrEqual(1);
      if (param === "oscillator_hz") expect(value).toBeGreaterThanOrEqual(20);
    }
  });

  it("refuses to send non-tunable parameters at all", () => {
    expect(client.setParam("buffer_size_p1", 512)).toBe(false);
    expect(engine.received).toHaveLength(0);
  });

  it("buffer plot data tracks readable_len across 90- and 70-point fronts", async () => {
    engine.generation = 1;
    engine.buffer = Array(180).fill(0.25);
    let state = await waitFor(client, (s) => s.generationIndex === 1);
    expect(state.buffer).toHaveLength(180);
    engine.generation = 2;
    engine.buffer = Array(140).fill(-0.25);
    state = await waitFor(client, (s) => s.generationIndex === 2);
    expect(state.buffer).toHaveLength(140);
  });

  it("reconnects after the server drops the connection", async () => {
    for (const socket of engine.server.clients) socket.terminate();
    await waitFor(client, (s) => s.connection === "closed", 2000).catch(() => undefined);
    await waitFor(client, (s) => s.connection === "open");
    expect(client.getState().connection).toBe("open");
  });
});
