/** Viewer state and the single reducer every control dispatches through.
 * The reducer is pure: replaying one action sequence from the same initial
 * state always lands in the same state, which is what makes scripted
 * playback reproducible. */

import type { FrameBundle } from "./types.js";
import { alphaKeyOf } from "./validate.js";

export const SPEED_MIN = 0.1;
export const SPEED_MAX = 2.0;
export const DEFAULT_SPEED = 1.0;
/** Most tasks default to strong anchoring; used when the bundle has it. */
export const PREFERRED_ALPHA = 0.8;

export interface Toggles {
  darkEdges: boolean;
  convexHulls: boolean;
  nodeColor: boolean;
  nodeLabels: boolean;
}

export interface ViewerState {
  frame: number;
  playing: boolean;
  direction: 1 | -1;
  secondsPerFrame: number;
  alphaKey: string;
  toggles: Toggles;
  highlightVertices: number[];
  highlightEdges: [number, number][];
  tween: boolean;
}

export interface BundleInfo {
  frameCount: number;
  /** canonical keys in ascending numeric order */
  alphaKeys: string[];
}

export type Action =
  | { type: "tick" }
  | { type: "play"; direction: 1 | -1 }
  | { type: "pause" }
  | { type: "setFrame"; frame: number }
  | { type: "reset" }
  | { type: "setSpeed"; secondsPerFrame: number }
  | { type: "setAlpha"; level: number | string }
  | { type: "toggle"; name: keyof Toggles }
  | { type: "setHighlight"; vertices: number[]; edges: [number, number][] }
  | { type: "setTween"; enabled: boolean };

export function bundleInfo(bundle: FrameBundle): BundleInfo {
  const keys = [...bundle.meta.alphas]
    .sort((a, b) => a - b)
    .map((a) => alphaKeyOf(a));
  return { frameCount: bundle.frames.length, alphaKeys: keys };
}

export function initialState(info: BundleInfo): ViewerState {
  const preferred = alphaKeyOf(PREFERRED_ALPHA);
  const fallback = info.alphaKeys[info.alphaKeys.length - 1] ?? "1.0";
  return {
    frame: 0,
    playing: false,
    direction: 1,
    secondsPerFrame: DEFAULT_SPEED,
    alphaKey: info.alphaKeys.includes(preferred) ? preferred : fallback,
    toggles: { darkEdges: true, convexHulls: true, nodeColor: true, nodeLabels: true },
    highlightVertices: [],
    highlightEdges: [],
    tween: false,
  };
}

function clampSpeed(value: number): number {
  if (Number.isNaN(value)) return DEFAULT_SPEED;
  return Math.min(SPEED_MAX, Math.max(SPEED_MIN, value));
}

function clampFrame(frame: number, count: number): number {
  return Math.min(count - 1, Math.max(0, Math.round(frame)));
}

export function reduce(state: ViewerState, action: Action, info: BundleInfo): ViewerState {
  switch (action.type) {
    case "tick": {
      if (!state.playing) return state;
      const count = info.frameCount;
      const frame = (state.frame + state.direction + count) % count; // loop at either end
      return { ...state, frame };
    }
    case "play":
      return { ...state, playing: true, direction: action.direction };
    case "pause":
      return { ...state, playing: false };
    case "setFrame":
      return { ...state, frame: clampFrame(action.frame, info.frameCount) };
    case "reset":
      return { ...state, frame: 0, playing: false };
    case "setSpeed":
      // cadence changes take effect on the next tick; playback state untouched
      return { ...state, secondsPerFrame: clampSpeed(action.secondsPerFrame) };
    case "setAlpha": {
      const key =
        typeof action.level === "string" ? action.level : alphaKeyOf(action.level);
      if (!info.alphaKeys.includes(key)) return state; // unknown level rejected
      return { ...state, alphaKey: key };
    }
    case "toggle":
      return {
        ...state,
        toggles: { ...state.toggles, [action.name]: !state.toggles[action.name] },
      };
    case "setHighlight":
      return {
        ...state,
        highlightVertices: [...action.vertices],
        highlightEdges: action.edges.map(([i, j]) => [i, j]),
      };
    case "setTween":
      return { ...state, tween: action.enabled };
  }
}

/** Apply a scripted sequence of actions; used by replay tests. */
export function replay(info: BundleInfo, actions: Action[]): ViewerState {
  return actions.reduce((state, action) => reduce(state, action, info), initialState(info));
}
