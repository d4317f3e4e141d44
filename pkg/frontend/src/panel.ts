// DOM control panel: sliders, meters, plots, status. Rendering reads the
// store exclusively; user gestures go through EngineClient.setParam.

import { EngineClient } from "./client.js";
import { positionToValue, SLIDERS, SliderSpec, valueToPosition } from "./protocol.js";
import { partialBars, rmsToMeterFraction, waveformPoints } from "./render.js";
import { UiState } from "./store.js";

const SLIDER_STEPS = 1000;

interface SliderRow {
  spec: SliderSpec;
  input: HTMLInputElement;
  readout: HTMLSpanElement;
}

export class ControlPanel {
  private readonly sliders: SliderRow[] = [];
  private readonly status: HTMLSpanElement;
  private readonly generation: HTMLSpanElement;
  private readonly toast: HTMLDivElement;
  private readonly waveCanvas: HTMLCanvasElement;
  private readonly barCanvas: HTMLCanvasElement;
  private readonly meterP1: HTMLDivElement;
  private readonly meterP2: HTMLDivElement;
  private lastError: string | null = null;

  constructor(private readonly root: HTMLElement, private readonly client: EngineClient) {
    this.status = this.line("status", "connecting…");
    this.generation = this.line("generation", "–");
    const sliderBox = document.createElement("div");
    sliderBox.className = "sliders";
    this.root.appendChild(sliderBox);
    for (const spec of SLIDERS) {
      this.sliders.push(this.makeSlider(sliderBox, spec));
    }
    this.waveCanvas = this.makeCanvas("waveform", 800, 160);
    this.barCanvas = this.makeCanvas("partials", 800, 160);
    this.meterP1 = this.makeMeter("path 1");
    this.meterP2 = this.makeMeter("path 2");
    this.toast = document.createElement("div");
    this.toast.className = "toast";
    this.toast.hidden = true;
    this.root.appendChild(this.toast);
    client.onChange((state) => this.render(state));
  }

  private line(cls: string, text: string): HTMLSpanElement {
    const row = document.createElement("div");
    row.className = `row ${cls}`;
    const label = document.createElement("span");
    label.className = "label";
    label.textContent = cls;
    const value = document.createElement("span");
    value.className = "value";
    value.textContent = text;
    row.append(label, value);
    this.root.appendChild(row);
    return value;
  }

  private makeSlider(parent: HTMLElement, spec: SliderSpec): SliderRow {
    const row = document.createElement("label");
    row.className = "slider-row";
    const caption = document.createElement("span");
    caption.textContent = spec.label;
    const input = document.createElement("input");
    input.type = "range";
    input.min = "0";
    input.max = String(SLIDER_STEPS);
    input.value = String(Math.round(valueToPosition(spec, spec.initial) * SLIDER_STEPS));
    const readout = document.createElement("span");
    readout.className = "readout";
    readout.textContent = format(spec.initial);
    input.addEventListener("input", () => {
      const value = positionToValue(spec, Number(input.value) / SLIDER_STEPS);
      this.client.setParam(spec.param, value);
      readout.textContent = format(value);
    });
    row.append(caption, input, readout);
    parent.appendChild(row);
    return { spec, input, readout };
  }

  private makeCanvas(cls: string, width: number, height: number): HTMLCanvasElement {
    const canvas = document.createElement("canvas");
    canvas.className = cls;
    canvas.width = width;
    canvas.height = height;
    this.root.appendChild(canvas);
    return canvas;
  }

  private makeMeter(label: string): HTMLDivElement {
    const wrap = document.createElement("div");
    wrap.className = "meter";
    wrap.title = label;
    const fill = document.createElement("div");
    fill.className = "meter-fill";
    wrap.appendChild(fill);
    this.root.appendChild(wrap);
    return fill;
  }

  private render(state: UiState): void {
    this.status.textContent = state.connection;
    this.root.classList.toggle("disconnected", state.connection !== "open");
    for (const { input } of this.sliders) {
      input.disabled = state.connection !== "open";
    }
    this.generation.textContent = state.generationIndex >= 0 ? String(state.generationIndex) : "–";

    for (const { spec, input, readout } of this.sliders) {
      const value = state.params[spec.param];
      if (value !== undefined && document.activeElement !== input) {
        input.value = String(Math.round(valueToPosition(spec, value) * SLIDER_STEPS));
        readout.textContent = format(value);
      }
    }

    this.drawWave(state.buffer);
    this.drawBars(state.partials);
    this.meterP1.style.width = `${rmsToMeterFraction(state.rms.p1) * 100}%`;
    this.meterP2.style.width = `${rmsToMeterFraction(state.rms.p2) * 100}%`;

    if (state.lastError !== null && state.lastError !== this.lastError) {
      this.lastError = state.lastError;
      this.toast.textContent = state.lastError;
      this.toast.hidden = false;
      setTimeout(() => (this.toast.hidden = true), 4000);
    }
  }

  private drawWave(buffer: number[]): void {
    const ctx = this.waveCanvas.getContext("2d");
    if (ctx === null) return;
    const { width, height } = this.waveCanvas;
    ctx.clearRect(0, 0, width, height);
    ctx.strokeStyle = "#4477cc";
    ctx.beginPath();
    const points = waveformPoints(buffer, width, height);
    points.forEach((p, i) => (i === 0 ? ctx.moveTo(p.x, p.y) : ctx.lineTo(p.x, p.y)));
    ctx.stroke();
  }

  private drawBars(amplitudes: number[]): void {
    const ctx = this.barCanvas.getContext("2d");
    if (ctx === null) return;
    const { width, height } = this.barCanvas;
    ctx.clearRect(0, 0, width, height);
    ctx.fillStyle = "#cc3333";
    for (const bar of partialBars(amplitudes, width, height)) {
      ctx.fillRect(bar.x, bar.y, bar.w, bar.h);
    }
  }
}

function format(value: number): string {
  return Math.abs(value) >= 100 ? value.toFixed(0) : value.toPrecision(3);
}
