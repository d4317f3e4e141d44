// Pure view-model geometry for the canvas displays. One waveform point per
// readable sample and one bar per partial, so the plots are an exact census
// of engine state, not a resampled sketch.

export interface Point {
  x: number;
  y: number;
}

export interface Bar {
  x: number;
  y: number;
  w: number;
  h: number;
}

/** Polyline for the readable buffer; sample values are in [-1, 1]. */
export function waveformPoints(buffer: number[], width: number, height: number): Point[] {
  const n = buffer.length;
  if (n === 0) return [];
  const mid = height / 2;
  const step = n > 1 ? width / (n - 1) : 0;
  return buffer.map((v, i) => ({ x: i * step, y: mid - v * mid }));
}

/** One bar per partial; zero amplitudes yield zero-height bars. */
export function partialBars(amplitudes: number[], width: number, height: number): Bar[] {
  const n = amplitudes.length;
  if (n === 0) return [];
  const slot = width / n;
  const w = Math.max(1, slot * 0.8);
  return amplitudes.map((a, i) => {
    const h = Math.max(0, Math.min(1, a)) * height;
    return { x: i * slot, y: height - h, w, h };
  });
}

/** Map an RMS level to a meter fill fraction (floor at -60 dBFS). */
export function rmsToMeterFraction(rms: number): number {
  if (!(rms > 0)) return 0;
  const db = 20 * Math.log10(rms);
  return Math.min(1, Math.max(0, (db + 60) / 60));
}
