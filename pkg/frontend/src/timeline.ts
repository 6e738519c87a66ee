// Timeline model: time <-> pixel mapping, keyframe markers, and scrubbing.
// Pure state; the canvas rendering lives in the app layer.

import type { TrackPayload } from './types.js';
import { trackSpan } from './boxes.js';

export interface TimelineMarker {
  objectId: string;
  tMs: number;
  x: number;
}

export class TimelineModel {
  durationMs: number;
  widthPx: number;
  currentMs = 0;

  constructor(durationMs: number, widthPx: number) {
    this.durationMs = Math.max(durationMs, 1);
    this.widthPx = Math.max(widthPx, 1);
  }

  timeToX(tMs: number): number {
    return (this.clampTime(tMs) / this.durationMs) * this.widthPx;
  }

  xToTime(x: number): number {
    const clamped = Math.min(Math.max(x, 0), this.widthPx);
    return Math.round((clamped / this.widthPx) * this.durationMs);
  }

  clampTime(tMs: number): number {
    return Math.min(Math.max(tMs, 0), this.durationMs);
  }

  scrubTo(tMs: number): number {
    this.currentMs = this.clampTime(tMs);
    return this.currentMs;
  }

  markers(tracks: Map<string, TrackPayload>): TimelineMarker[] {
    const out: TimelineMarker[] = [];
    for (const [objectId, track] of tracks) {
      for (const kf of track.keyframes) {
        out.push({ objectId, tMs: kf.t_ms, x: this.timeToX(kf.t_ms) });
      }
    }
    return out.sort((a, b) => a.tMs - b.tMs || a.objectId.localeCompare(b.objectId));
  }

  // Next/previous keyframe time across the given tracks, for stepping.
  nextKeyframe(tracks: Map<string, TrackPayload>, fromMs: number): number | null {
    const times = this.allTimes(tracks).filter((t) => t > fromMs);
    return times.length ? times[0] : null;
  }

  previousKeyframe(tracks: Map<string, TrackPayload>, fromMs: number): number | null {
    const times = this.allTimes(tracks).filter((t) => t < fromMs);
    return times.length ? times[times.length - 1] : null;
  }

  // Union of the tracks' extents, e.g. to preview a grouped gesture's span.
  unionSpan(tracks: Iterable<TrackPayload>): [number, number] | null {
    let start: number | null = null;
    let end: number | null = null;
    for (const track of tracks) {
      const span = trackSpan(track);
      if (span === null) {
        continue;
      }
      start = start === null ? span[0] : Math.min(start, span[0]);
      end = end === null ? span[1] : Math.max(end, span[1]);
    }
    return start === null || end === null ? null : [start, end];
  }

  private allTimes(tracks: Map<string, TrackPayload>): number[] {
    const set = new Set<number>();
    for (const track of tracks.values()) {
      for (const kf of track.keyframes) {
        set.add(kf.t_ms);
      }
    }
    return [...set].sort((a, b) => a - b);
  }
}
