// Normalized bounding-box math. All coordinates live in [0, 1] of the media
// rectangle and are quantized to six decimals, mirroring the server, so a box
// drawn here survives save/reload bit-for-bit at that precision.

import type { BoxPayload, KeyframePayload, TrackPayload } from './types.js';

export const MIN_BOX_SIZE = 0.005;

export function quantize(value: number): number {
  return Math.round(value * 1e6) / 1e6;
}

export function quantizeBox(box: BoxPayload): BoxPayload {
  return { x: quantize(box.x), y: quantize(box.y), w: quantize(box.w), h: quantize(box.h) };
}

// Shrink/shift a box so it lies inside the unit square; a drag past the right
// edge ends clamped at x + w = 1.
export function clampBox(box: BoxPayload): BoxPayload {
  const w = Math.min(Math.max(box.w, MIN_BOX_SIZE), 1);
  const h = Math.min(Math.max(box.h, MIN_BOX_SIZE), 1);
  const x = Math.min(Math.max(box.x, 0), 1 - w);
  const y = Math.min(Math.max(box.y, 0), 1 - h);
  return quantizeBox({ x, y, w, h });
}

export function isInsideUnitSquare(box: BoxPayload): boolean {
  return (
    box.x >= 0 && box.y >= 0 && box.w > 0 && box.h > 0 &&
    box.x + box.w <= 1 && box.y + box.h <= 1
  );
}

export function boxesClose(a: BoxPayload, b: BoxPayload, epsilon = 0.001): boolean {
  return (
    Math.abs(a.x - b.x) <= epsilon &&
    Math.abs(a.y - b.y) <= epsilon &&
    Math.abs(a.w - b.w) <= epsilon &&
    Math.abs(a.h - b.h) <= epsilon
  );
}

// Box readout at a time: exact at keyframes, component-wise linear between
// them, null outside the track's domain. Matches the server's readout.
export function boxAt(track: TrackPayload, tMs: number): BoxPayload | null {
  const frames = track.keyframes;
  if (frames.length === 0 || tMs < frames[0].t_ms || tMs > frames[frames.length - 1].t_ms) {
    return null;
  }
  for (let i = 0; i < frames.length; i += 1) {
    const kf = frames[i];
    if (kf.t_ms === tMs) {
      return { ...kf.box };
    }
    if (kf.t_ms > tMs) {
      const prev = frames[i - 1];
      const alpha = (tMs - prev.t_ms) / (kf.t_ms - prev.t_ms);
      return quantizeBox({
        x: prev.box.x + alpha * (kf.box.x - prev.box.x),
        y: prev.box.y + alpha * (kf.box.y - prev.box.y),
        w: prev.box.w + alpha * (kf.box.w - prev.box.w),
        h: prev.box.h + alpha * (kf.box.h - prev.box.h),
      });
    }
  }
  return null;
}

// Insert or replace the keyframe at tMs, keeping timestamps strictly
// increasing. Returns a new track; the input is not mutated.
export function upsertKeyframe(track: TrackPayload, tMs: number, box: BoxPayload): TrackPayload {
  const clamped = clampBox(box);
  const keyframes = track.keyframes.filter((kf) => kf.t_ms !== tMs);
  keyframes.push({ t_ms: tMs, box: clamped });
  keyframes.sort((a, b) => a.t_ms - b.t_ms);
  return { keyframes };
}

export function removeKeyframe(track: TrackPayload, tMs: number): TrackPayload {
  return { keyframes: track.keyframes.filter((kf) => kf.t_ms !== tMs) };
}

export function trackSpan(track: TrackPayload): [number, number] | null {
  if (track.keyframes.length === 0) {
    return null;
  }
  return [track.keyframes[0].t_ms, track.keyframes[track.keyframes.length - 1].t_ms];
}

export function moveBox(box: BoxPayload, dx: number, dy: number): BoxPayload {
  return clampBox({ ...box, x: box.x + dx, y: box.y + dy });
}

export type ResizeHandle = 'nw' | 'ne' | 'sw' | 'se';

export function resizeBox(box: BoxPayload, handle: ResizeHandle, dx: number, dy: number): BoxPayload {
  let { x, y, w, h } = box;
  if (handle === 'se') {
    w += dx;
    h += dy;
  } else if (handle === 'ne') {
    y += dy;
    w += dx;
    h -= dy;
  } else if (handle === 'sw') {
    x += dx;
    w -= dx;
    h += dy;
  } else {
    x += dx;
    y += dy;
    w -= dx;
    h -= dy;
  }
  return clampBox({ x, y, w, h });
}

// Pixel-space helpers for the canvas overlay.
export interface Rect {
  left: number;
  top: number;
  width: number;
  height: number;
}

export function toPixels(box: BoxPayload, view: Rect): Rect {
  return {
    left: view.left + box.x * view.width,
    top: view.top + box.y * view.height,
    width: box.w * view.width,
    height: box.h * view.height,
  };
}

export function fromPixels(rect: Rect, view: Rect): BoxPayload {
  return clampBox({
    x: (rect.left - view.left) / view.width,
    y: (rect.top - view.top) / view.height,
    w: rect.width / view.width,
    h: rect.height / view.height,
  });
}
