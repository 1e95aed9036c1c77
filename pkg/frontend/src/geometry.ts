/** Screen-space fitting and convex hulls. */

import type { FrameBundle } from "./types.js";

export interface Point {
  x: number;
  y: number;
}

export interface FitTransform {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Fit all of an anchoring level's positions (every frame) into the
 * viewport with a fixed aspect ratio. Computed once per level, not per
 * frame, so on-screen motion reflects layout change only. */
export function fitTransform(
  bundle: FrameBundle,
  alphaKey: string,
  width: number,
  height: number,
  padding = 24,
): FitTransform {
  let minX = Infinity;
  let maxX = -Infinity;
  let minY = Infinity;
  let maxY = -Infinity;
  for (const frame of bundle.frames) {
    const slice = frame.positions[alphaKey];
    if (!slice) continue;
    for (const [x, y] of slice) {
      if (x < minX) minX = x;
      if (x > maxX) maxX = x;
      if (y < minY) minY = y;
      if (y > maxY) maxY = y;
    }
  }
  if (!Number.isFinite(minX)) {
    return { scale: 1, offsetX: width / 2, offsetY: height / 2 };
  }
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * padding) / spanX, (height - 2 * padding) / spanY);
  const offsetX = width / 2 - scale * (minX + maxX) / 2;
  const offsetY = height / 2 - scale * (minY + maxY) / 2;
  return { scale, offsetX, offsetY };
}

export function applyTransform(t: FitTransform, x: number, y: number): Point {
  return { x: t.offsetX + t.scale * x, y: t.offsetY + t.scale * y };
}

function cross(o: Point, a: Point, b: Point): number {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

/** Monotone-chain convex hull. Returns the hull in counter-clockwise
 * order, or [] when fewer than 3 distinct points exist (callers draw a
 * halo or a segment instead of a polygon). */
export function convexHull(points: Point[]): Point[] {
  const unique = new Map<string, Point>();
  for (const p of points) unique.set(`${p.x},${p.y}`, p);
  const sorted = [...unique.values()].sort((a, b) => a.x - b.x || a.y - b.y);
  if (sorted.length < 3) return [];
  const lower: Point[] = [];
  for (const p of sorted) {
    while (lower.length >= 2 && cross(lower[lower.length - 2]!, lower[lower.length - 1]!, p) <= 0) {
      lower.pop();
    }
    lower.push(p);
  }
  const upper: Point[] = [];
  for (let i = sorted.length - 1; i >= 0; i--) {
    const p = sorted[i]!;
    while (upper.length >= 2 && cross(upper[upper.length - 2]!, upper[upper.length - 1]!, p) <= 0) {
      upper.pop();
    }
    upper.push(p);
  }
  const hull = lower.slice(0, -1).concat(upper.slice(0, -1));
  return hull.length >= 3 ? hull : [];
}

/** Hull ring padded outward from its centroid (px). */
export function padHull(hull: Point[], padding: number): Point[] {
  if (hull.length === 0) return hull;
  const cx = hull.reduce((s, p) => s + p.x, 0) / hull.length;
  const cy = hull.reduce((s, p) => s + p.y, 0) / hull.length;
  return hull.map((p) => {
    const dx = p.x - cx;
    const dy = p.y - cy;
    const len = Math.hypot(dx, dy) || 1;
    return { x: p.x + (dx / len) * padding, y: p.y + (dy / len) * padding };
  });
}
