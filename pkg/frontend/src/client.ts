// Engine connection: one WebSocket, reconnect loop, throttled parameter sends.

import { clampToSlider, encodeSet, parseFrame, sliderByParam } from "./protocol.js";
import { applyFrame, applyLocalSet, initialState, setConnection, UiState } from "./store.js";
import { TrailingRateLimiter } from "./throttle.js";

export interface WebSocketLike {
  send(data: string): void;
  close(): void;
  onopen: (() => void) | null;
  onclose: (() => void) | null;
  onerror: ((err?: unknown) => void) | null;
  onmessage: ((event: { data: unknown }) => void) | null;
}

export type SocketFactory = (url: string) => WebSocketLike;

export interface EngineClientOptions {
  reconnectDelayMs?: number;
  maxSendsPerSecond?: number;
}

export class EngineClient {
  private socket: WebSocketLike | null = null;
  private state: UiState = initialState();
  private readonly listeners = new Set<(s: UiState) => void>();
  private readonly limiter: TrailingRateLimiter;
  private readonly reconnectDelayMs: number;
  private reconnectTimer: ReturnType<typeof setTimeout> | null = null;
  private closed = false;

  constructor(
    private readonly url: string,
    private readonly factory: SocketFactory,
    options: EngineClientOptions = {},
  ) {
    this.limiter = new TrailingRateLimiter(options.maxSendsPerSecond ?? 30);
    this.reconnectDelayMs = options.reconnectDelayMs ?? 1000;
  }

  getState(): UiState {
    return this.state;
  }

  onChange(listener: (s: UiState) => void): () => void {
    this.listeners.add(listener);
    return () => this.listeners.delete(listener);
  }

  private update(next: UiState): void {
    this.state = next;
    for (const listener of this.listeners) listener(next);
  }

  connect(): void {
    if (this.closed) return;
    this.update(setConnection(this.state, "connecting"));
    const socket = this.factory(this.url);
    this.socket = socket;
    socket.onopen = () => this.update(setConnection(this.state, "open"));
    socket.onmessage = (event) => {
      const frame = parseFrame(String(event.data));
      if (frame !== null) this.update(applyFrame(this.state, frame));
    };
    socket.onerror = () => {
      // onclose follows; the reconnect loop lives there.
    };
    socket.onclose = () => {
      this.socket = null;
      this.update(setConnection(this.state, "closed"));
      if (!this.closed && this.reconnectTimer === null) {
        this.reconnectTimer = setTimeout(() => {
          this.reconnectTimer = null;
          this.connect();
        }, this.reconnectDelayMs);
      }
    };
  }

  /**
   * Clamp to the slider's range, update optimistically and send (throttled).
   * Returns false when the name is not a known live-tunable slider or the
   * connection is down; nothing outside a slider's bounds is ever sent.
   */
  setParam(param: string, value: number): boolean {
    const spec = sliderByParam(param);
    if (spec === undefined) return false;
    if (this.socket === null || this.state.connection !== "open") return false;
    const clamped = clampToSlider(spec, value);
    this.update(applyLocalSet(this.state, param, clamped));
    this.limiter.submit(() => {
      if (this.socket !== null && this.state.connection === "open") {
        this.socket.send(encodeSet(param, clamped));
      }
    });
    return true;
  }

  close(): void {
    this.closed = true;
    if (this.reconnectTimer !== null) {
      clearTimeout(this.reconnectTimer);
      this.reconnectTimer = null;
    }
    this.limiter.dispose();
    if (this.socket !== null) this.socket.close();
  }
}
