import { describe, expect, it } from 'vitest';

import { TimelineModel } from '../src/timeline.js';
import type { TrackPayload } from '../src/types.js';

const hand: TrackPayload = {
  keyframes: [
    { t_ms: 1000, box: { x: 0.1, y: 0.1, w: 0.2, h: 0.2 } },
    { t_ms: 2500, box: { x: 0.3, y: 0.1, w: 0.2, h: 0.2 } },
  ],
};
const head: TrackPayload = {
  keyframes: [
    { t_ms: 500, box: { x: 0.4, y: 0.1, w: 0.1, h: 0.1 } },
    { t_ms: 2000, box: { x: 0.4, y: 0.2, w: 0.1, h: 0.1 } },
  ],
};

describe('time/pixel mapping', () => {
  it('round-trips within a millisecond-scale tolerance', () => {
    const timeline = new TimelineModel(60_000, 800);
    for (const t of [0, 1234, 30_000, 60_000]) {
      expect(Math.abs(timeline.xToTime(timeline.timeToX(t)) - t)).toBeLessThanOrEqual(60_000 / 800 / 2 + 1);
    }
  });

  it('clamps scrubbing to the document duration', () => {
    const timeline = new TimelineModel(10_000, 100);
    expect(timeline.scrubTo(-5)).toBe(0);
    expect(timeline.scrubTo(99_999)).toBe(10_000);
  });
});

describe('keyframe navigation', () => {
  const timeline = new TimelineModel(60_000, 800);
  const tracks = new Map([
    ['hand', hand],
    ['head', head],
  ]);

  it('lists markers in time order', () => {
    const markers = timeline.markers(tracks);
    expect(markers.map((m) => m.tMs)).toEqual([500, 1000, 2000, 2500]);
  });

  it('steps to the next and previous keyframes', () => {
    expect(timeline.nextKeyframe(tracks, 0)).toBe(500);
    expect(timeline.nextKeyframe(tracks, 1000)).toBe(2000);
    expect(timeline.nextKeyframe(tracks, 2500)).toBeNull();
    expect(timeline.previousKeyframe(tracks, 2500)).toBe(2000);
    expect(timeline.previousKeyframe(tracks, 500)).toBeNull();
  });

  it('computes the grouped gesture span as the union of member extents', () => {
    expect(timeline.unionSpan([hand, head])).toEqual([500, 2500]);
    expect(timeline.unionSpan([])).toBeNull();
  });
});
