// Box math: clamping, quantization, interpolation parity with the recorded
// server readouts, and the save/reload round trip at 0.001 precision.

import { describe, expect, it } from 'vitest';
import { readFileSync } from 'node:fs';
import { fileURLToPath } from 'node:url';

import {
  boxAt,
  boxesClose,
  clampBox,
  fromPixels,
  isInsideUnitSquare,
  moveBox,
  quantizeBox,
  removeKeyframe,
  resizeBox,
  toPixels,
  trackSpan,
  upsertKeyframe,
} from '../src/boxes.js';
import type { BoxPayload, TrackPayload } from '../src/types.js';

const fixturePath = fileURLToPath(new URL('./fixtures/golden.json', import.meta.url));
const fixture = JSON.parse(readFileSync(fixturePath, 'utf-8')) as {
  box_probe: { track: TrackPayload; samples: { t_ms: number; box: BoxPayload }[] };
};

describe('interpolation parity with the server', () => {
  const { track, samples } = fixture.box_probe;
  for (const sample of samples) {
    it(`matches the server readout at t=${sample.t_ms}ms`, () => {
      const box = boxAt(track, sample.t_ms);
      expect(box).not.toBeNull();
      for (const axis of ['x', 'y', 'w', 'h'] as const) {
        expect(Math.abs(box![axis] - sample.box[axis])).toBeLessThanOrEqual(1e-9);
      }
    });
  }

  it('is exact at keyframes', () => {
    for (const kf of track.keyframes) {
      expect(boxAt(track, kf.t_ms)).toEqual(kf.box);
    }
  });

  it('returns null outside the track domain', () => {
    expect(boxAt(track, -1)).toBeNull();
    expect(boxAt(track, 10_000)).toBeNull();
  });
});

describe('drawing round trip', () => {
  it('a drawn box survives pixel mapping and quantization within 0.001', () => {
    const view = { left: 0, top: 0, width: 960, height: 540 };
    const drawn: BoxPayload = { x: 0.40501, y: 0.25199, w: 0.12345, h: 0.20001 };
    const pixels = toPixels(drawn, view);
    const back = fromPixels(pixels, view);
    expect(boxesClose(back, drawn, 0.001)).toBe(true);
    // And the wire form (quantized) stays within tolerance too.
    expect(boxesClose(quantizeBox(back), drawn, 0.001)).toBe(true);
  });

  it('keyframe upsert keeps timestamps strictly increasing', () => {
    let track: TrackPayload = { keyframes: [] };
    track = upsertKeyframe(track, 500, { x: 0.1, y: 0.1, w: 0.2, h: 0.2 });
    track = upsertKeyframe(track, 100, { x: 0.2, y: 0.1, w: 0.2, h: 0.2 });
    track = upsertKeyframe(track, 300, { x: 0.3, y: 0.1, w: 0.2, h: 0.2 });
    expect(track.keyframes.map((kf) => kf.t_ms)).toEqual([100, 300, 500]);
    track = upsertKeyframe(track, 300, { x: 0.5, y: 0.5, w: 0.1, h: 0.1 });
    expect(track.keyframes).toHaveLength(3);
    expect(track.keyframes[1].box.x).toBeCloseTo(0.5, 6);
    track = removeKeyframe(track, 100);
    expect(trackSpan(track)).toEqual([300, 500]);
  });
});

describe('clamping at the media edges', () => {
  it('a drag past the right edge ends clamped at x + w = 1', () => {
    const box: BoxPayload = { x: 0.7, y: 0.2, w: 0.25, h: 0.2 };
    const dragged = moveBox(box, 0.4, 0);
    expect(dragged.x + dragged.w).toBeCloseTo(1, 6);
    expect(dragged.w).toBeCloseTo(0.25, 6);
    expect(isInsideUnitSquare(dragged)).toBe(true);
  });

  it('a resize past the bottom edge clamps the height', () => {
    const box: BoxPayload = { x: 0.1, y: 0.8, w: 0.2, h: 0.15 };
    const resized = resizeBox(box, 'se', 0, 0.5);
    expect(resized.y + resized.h).toBeLessThanOrEqual(1);
    expect(isInsideUnitSquare(resized)).toBe(true);
  });

  it('negative positions clamp to the origin', () => {
    expect(clampBox({ x: -0.4, y: -0.1, w: 0.3, h: 0.2 })).toEqual({
      x: 0, y: 0, w: 0.3, h: 0.2,
    });
  });

  it('rejects degenerate boxes from validation checks', () => {
    expect(isInsideUnitSquare({ x: 0.2, y: 0.2, w: 0, h: 0.1 })).toBe(false);
    expect(isInsideUnitSquare({ x: 0.95, y: 0.2, w: 0.2, h: 0.1 })).toBe(false);
  });

  it('quantization matches the wire format precision', () => {
    const box = quantizeBox({ x: 0.1234567891, y: 0.2, w: 0.3, h: 0.4 });
    expect(box.x).toBe(0.123457);
  });
});
