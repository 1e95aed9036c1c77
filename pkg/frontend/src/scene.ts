/** Pure scene construction: rendering frame k is a function of
 * (bundle, state, viewport) and nothing else. The painter consumes the
 * scene; tests compare scenes structurally. */

import { applyTransform, convexHull, fitTransform, padHull } from "./geometry.js";
import type { ViewerState } from "./state.js";
import { TABLEAU10, type FrameBundle } from "./types.js";

export const HULL_PADDING_PX = 8;
export const NODE_RADIUS = 7;
export const NEUTRAL_NODE = "#9a9a9a";
export const HIGHLIGHT = "#d62728";

export interface EdgeOp {
  kind: "edge";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  opacity: number;
  color: string;
  width: number;
}

export interface HullOp {
  kind: "hull";
  points: { x: number; y: number }[];
  color: string;
}

export interface HaloOp {
  kind: "halo";
  /** 1-member communities get a circle, 2-member ones a stadium segment */
  points: { x: number; y: number }[];
  radius: number;
  color: string;
}

export interface NodeOp {
  kind: "node";
  x: number;
  y: number;
  radius: number;
  fill: string;
  stroke: string;
}

export interface LabelOp {
  kind: "label";
  x: number;
  y: number;
  text: string;
}

export interface Scene {
  frame: number;
  alphaKey: string;
  width: number;
  height: number;
  edges: EdgeOp[];
  hulls: HullOp[];
  halos: HaloOp[];
  nodes: NodeOp[];
  labels: LabelOp[];
}

function paletteColor(id: number): string {
  return TABLEAU10[((id % TABLEAU10.length) + TABLEAU10.length) % TABLEAU10.length]!;
}

function edgeKey(i: number, j: number): string {
  return i < j ? `${i}-${j}` : `${j}-${i}`;
}

export function buildScene(
  bundle: FrameBundle,
  state: ViewerState,
  width: number,
  height: number,
): Scene {
  const frame = bundle.frames[state.frame];
  if (!frame) throw new Error(`frame ${state.frame} outside bundle`);
  const slice = frame.positions[state.alphaKey];
  if (!slice) throw new Error(`no positions for alpha ${state.alphaKey}`);
  const transform = fitTransform(bundle, state.alphaKey, width, height);
  const screen = slice.map(([x, y]) => applyTransform(transform, x, y));

  const highlightedVertices = new Set(state.highlightVertices);
  const highlightedEdges = new Set(state.highlightEdges.map(([i, j]) => edgeKey(i, j)));
  const baseOpacity = state.toggles.darkEdges ? 1.0 : 0.2;

  const edges: EdgeOp[] = [];
  const seen = new Set<string>();
  for (const [i, j] of frame.edges) {
    const key = edgeKey(i, j);
    if (seen.has(key)) continue; // draw one segment per unordered pair
    seen.add(key);
    const a = screen[i]!;
    const b = screen[j]!;
    const highlighted = highlightedEdges.has(key);
    edges.push({
      kind: "edge",
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      opacity: highlighted ? 1.0 : baseOpacity,
      color: highlighted ? HIGHLIGHT : "#444444",
      width: highlighted ? 2.5 : 1,
    });
  }

  const hulls: HullOp[] = [];
  const halos: HaloOp[] = [];
  if (state.toggles.convexHulls) {
    const groups = new Map<number, number[]>();
    frame.labels.forEach((label, v) => {
      const members = groups.get(label) ?? [];
      members.push(v);
      groups.set(label, members);
    });
    for (const [label, members] of [...groups.entries()].sort((a, b) => a[0] - b[0])) {
      const color = paletteColor(frame.colors[members[0]!]!);
      const pts = members.map((v) => screen[v]!);
      const hull = convexHull(pts);
      if (hull.length >= 3) {
        hulls.push({ kind: "hull", points: padHull(hull, HULL_PADDING_PX), color });
      } else {
        halos.push({
          kind: "halo",
          points: pts,
          radius: NODE_RADIUS + HULL_PADDING_PX,
          color,
        });
      }
    }
  }

  const nodes: NodeOp[] = screen.map((p, v) => {
    const highlighted = highlightedVertices.has(v);
    const fill = highlighted
      ? HIGHLIGHT
      : state.toggles.nodeColor
        ? paletteColor(frame.colors[v]!)
        : NEUTRAL_NODE;
    return {
      kind: "node",
      x: p.x,
      y: p.y,
      radius: highlighted ? NODE_RADIUS + 2 : NODE_RADIUS,
      fill,
      stroke: highlighted ? "#7f1d1d" : "#ffffff",
    };
  });

  const labels: LabelOp[] = state.toggles.nodeLabels
    ? screen.map((p, v) => ({
        kind: "label" as const,
        x: p.x,
        y: p.y - NODE_RADIUS - 4,
        text: bundle.vertices[v]?.label ?? String(v),
      }))
    : [];

  return {
    frame: state.frame,
    alphaKey: state.alphaKey,
    width,
    height,
    edges,
    hulls,
    halos,
    nodes,
    labels,
  };
}
