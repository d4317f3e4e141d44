// UI state reducer: every render reads from here, every frame lands here.

import { InboundFrame, isErrorFrame, StateFrame } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface UiState {
  connection: ConnectionStatus;
  generationIndex: number;
  params: Record<string, number>;
  partials: number[];
  buffer: number[];
  rms: { p1: number; p2: number };
  lastError: string | null;
  // Optimistic values awaiting confirmation by the next state frame.
  pending: Record<string, number>;
}

// The engine quantizes parameter values to float32 on some paths; treat
// anything within one part in a million as "the value we asked for".
const WIRE_EPSILON = 1e-6;

export function initialState(): UiState {
  return {
    connection: "connecting",
    generationIndex: -1,
    params: {},
    partials: [],
    buffer: [],
    rms: { p1: 0, p2: 0 },
    lastError: null,
    pending: {},
  };
}

export function setConnection(state: UiState, connection: ConnectionStatus): UiState {
  return { ...state, connection };
}

/** Optimistic local set: shown immediately, reverted if the engine disagrees. */
export function applyLocalSet(state: UiState, param: string, value: number): UiState {
  return {
    ...state,
    params: { ...state.params, [param]: value },
    pending: { ...state.pending, [param]: value },
  };
}

function agrees(a: number, b: number): boolean {
  const scale = Math.max(Math.abs(a), Math.abs(b), 1);
  return Math.abs(a - b) <= WIRE_EPSILON * scale;
}

function applyStateFrame(state: UiState, frame: StateFrame): UiState {
  // Stale frames (older generation) never overwrite newer state.
  if (frame.generation_index < state.generationIndex) return state;
  const params = { ...frame.params };
  const pending: Record<string, number> = {};
  for (const [name, wanted] of Object.entries(state.pending)) {
    const confirmed = frame.params[name];
    if (confirmed === undefined) {
      pending[name] = wanted;
      params[name] = wanted;
    } else if (agrees(confirmed, wanted)) {
      // Confirmed: keep the engine's value, drop the pending entry.
    } else {
      // Engine disagreed: revert the optimistic value.
    }
  }
  return {
    ...state,
    generationIndex: frame.generation_index,
    params,
    partials: frame.partials,
    buffer: frame.buffer ?? state.buffer,
    rms: frame.rms,
    pending,
  };
}

export function applyFrame(state: UiState, frame: InboundFrame): UiState {
  if (isErrorFrame(frame)) {
    return { ...state, lastError: frame.param ? `${frame.error}: ${frame.param}` : frame.error };
  }
  return applyStateFrame(state, frame);
}
