// Wire schema of the engine's control WebSocket.
//
// Outbound (UI -> engine):  {"set": {"param": <name>, "value": <number>}}
// Inbound state frames:     {generation_index, partials, params, rms, buffer?}
// Inbound error frames:     {"error": <code>, "param"?: <name>}

export interface StateFrame {
  generation_index: number;
  partials: number[];
  params: Record<string, number>;
  rms: { p1: number; p2: number };
  buffer?: number[];
}

export interface ErrorFrame {
  error: string;
  param?: string;
}

export type InboundFrame = StateFrame | ErrorFrame;

export interface SetMessage {
  set: { param: string; value: number };
}

export function isErrorFrame(frame: InboundFrame): frame is ErrorFrame {
  return typeof (frame as ErrorFrame).error === "string";
}

export function parseFrame(text: string): InboundFrame | null {
  let data: unknown;
  try {
    data = JSON.parse(text);
  } catch {
    return null;
  }
  if (typeof data !== "object" || data === null) return null;
  const obj = data as Record<string, unknown>;
  if (typeof obj.error === "string") {
    return { error: obj.error, param: typeof obj.param === "string" ? obj.param : undefined };
  }
  if (
    typeof obj.generation_index === "number" &&
    Array.isArray(obj.partials) &&
    typeof obj.params === "object" &&
    obj.params !== null &&
    typeof obj.rms === "object" &&
    obj.rms !== null
  ) {
    const rms = obj.rms as Record<string, unknown>;
    if (typeof rms.p1 !== "number" || typeof rms.p2 !== "number") return null;
    const frame: StateFrame = {
      generation_index: obj.generation_index,
      partials: obj.partials as number[],
      params: obj.params as Record<string, number>,
      rms: { p1: rms.p1, p2: rms.p2 },
    };
    if (Array.isArray(obj.buffer)) frame.buffer = obj.buffer as number[];
    return frame;
  }
  return null;
}

export function encodeSet(param: string, value: number): string {
  const message: SetMessage = { set: { param, value } };
  return JSON.stringify(message);
}

export interface SliderSpec {
  param: string;
  label: string;
  min: number;
  max: number;
  scale: "linear" | "log";
  initial: number;
}

// The engine's live-tunable parameter set; anything else is rejected server-side.
export const SLIDERS: SliderSpec[] = [
  { param: "sample_value_scaling", label: "sample scaling", min: 1, max: 5000, scale: "log", initial: 500 },
  { param: "oscillator_hz", label: "oscillator [Hz]", min: 20, max: 2000, scale: "linear", initial: 80 },
  { param: "fundamental_hz", label: "fundamental [Hz]", min: 20, max: 2000, scale: "linear", initial: 80 },
  { param: "gain_p1", label: "shape gain", min: 0, max: 1, scale: "linear", initial: 0.3 },
  { param: "gain_p2", label: "recurrence gain", min: 0, max: 1, scale: "linear", initial: 0.075 },
];

export function sliderByParam(param: string): SliderSpec | undefined {
  return SLIDERS.find((s) => s.param === param);
}

export function clampToSlider(spec: SliderSpec, value: number): number {
  if (!Number.isFinite(value)) return spec.initial;
  return Math.min(spec.max, Math.max(spec.min, value));
}

// Slider position in [0, 1] <-> parameter value under the slider's scale.
export function positionToValue(spec: SliderSpec, position: number): number {
  const p = Math.min(1, Math.max(0, position));
  if (spec.scale === "log") {
    return spec.min * Math.pow(spec.max / spec.min, p);
  }
  return spec.min + p * (spec.max - spec.min);
}

export function valueToPosition(spec: SliderSpec, value: number): number {
  const v = clampToSlider(spec, value);
  if (spec.scale === "log") {
    return Math.log(v / spec.min) / Math.log(spec.max / spec.min);
  }
  return (v - spec.min) / (spec.max - spec.min);
}
