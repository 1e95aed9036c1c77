/** Schema validation for loaded bundles: collect every problem found so the
 * viewer can refuse to render partially instead of failing mid-animation. */

import type { FrameBundle } from "./types.js";

export interface ValidationResult {
  bundle: FrameBundle | null;
  errors: string[];
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function isFiniteNumber(value: unknown): value is number {
  return typeof value === "number" && Number.isFinite(value);
}

function isPair(value: unknown): value is [number, number] {
  return (
    Array.isArray(value) &&
    value.length === 2 &&
    isFiniteNumber(value[0]) &&
    isFiniteNumber(value[1])
  );
}

export function validateBundle(data: unknown): ValidationResult {
  const errors: string[] = [];
  if (!isRecord(data)) {
    return { bundle: null, errors: ["bundle must be a JSON object"] };
  }
  const meta = data["meta"];
  if (!isRecord(meta)) {
    return { bundle: null, errors: ["missing meta object"] };
  }
  const n = meta["n"];
  const frameCount = meta["frames"];
  if (!isFiniteNumber(n) || n < 1) errors.push("meta.n must be a positive number");
  if (!isFiniteNumber(frameCount) || frameCount < 1) {
    errors.push("meta.frames must be a positive number");
  }
  const alphas = meta["alphas"];
  if (!Array.isArray(alphas) || alphas.length === 0 || !alphas.every(isFiniteNumber)) {
    errors.push("meta.alphas must be a non-empty list of numbers");
  }
  if (typeof meta["view_mode"] !== "string") errors.push("meta.view_mode must be a string");
  if (errors.length > 0) return { bundle: null, errors };

  const size = n as number;
  const vertices = data["vertices"];
  if (!Array.isArray(vertices) || vertices.length !== size) {
    errors.push(`expected ${size} vertex records`);
  } else {
    vertices.forEach((vertex, i) => {
      if (!isRecord(vertex) || !isFiniteNumber(vertex["id"]) ||
          typeof vertex["label"] !== "string" || !isFiniteNumber(vertex["stability"])) {
        errors.push(`vertex ${i} must have id, label, stability`);
      }
    });
  }

  const frames = data["frames"];
  if (!Array.isArray(frames) || frames.length !== frameCount) {
    errors.push(`expected ${frameCount} frames, got ${Array.isArray(frames) ? frames.length : 0}`);
    return { bundle: null, errors };
  }
  const alphaKeys = (alphas as number[]).map((a) => alphaKeyOf(a));
  frames.forEach((frame, k) => {
    if (!isRecord(frame)) {
      errors.push(`frame ${k} must be an object`);
      return;
    }
    if (frame["index"] !== k) errors.push(`frame ${k} has index ${frame["index"]}`);
    const edges = frame["edges"];
    if (!Array.isArray(edges) || !edges.every(isPair)) {
      errors.push(`frame ${k}: edges must be vertex-id pairs`);
    } else if (
      !edges.every(([i, j]) => i >= 0 && i < size && j >= 0 && j < size)
    ) {
      errors.push(`frame ${k}: edge endpoint outside 0..${size - 1}`);
    }
    const labels = frame["labels"];
    const colors = frame["colors"];
    if (!Array.isArray(labels) || labels.length !== size || !labels.every(isFiniteNumber)) {
      errors.push(`frame ${k}: labels must list ${size} numbers`);
    }
    if (!Array.isArray(colors) || colors.length !== size || !colors.every(isFiniteNumber)) {
      errors.push(`frame ${k}: colors must list ${size} numbers`);
    }
    const positions = frame["positions"];
    if (!isRecord(positions)) {
      errors.push(`frame ${k}: missing positions`);
    } else {
      for (const key of alphaKeys) {
        const slice = positions[key];
        if (!Array.isArray(slice) || slice.length !== size || !slice.every(isPair)) {
          errors.push(`frame ${k}: positions for alpha ${key} must list ${size} points`);
        }
      }
    }
    const stats = frame["stats"];
    if (!isRecord(stats) || !isFiniteNumber(stats["density"]) ||
        !isFiniteNumber(stats["isolates"]) || !isFiniteNumber(stats["communities"])) {
      errors.push(`frame ${k}: stats must carry density, isolates, communities`);
    }
  });

  if (errors.length > 0) return { bundle: null, errors };
  return { bundle: data as unknown as FrameBundle, errors: [] };
}

/** Canonical position-map key for an anchoring level; matches the writer,
 * which serializes Python floats (repr), e.g. 0 -> "0.0", 1 -> "1.0". */
export function alphaKeyOf(alpha: number): string {
  return Number.isInteger(alpha) ? alpha.toFixed(1) : String(alpha);
}
