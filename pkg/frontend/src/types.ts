/** Frame-bundle wire format written by the pipeline CLI. */

export interface BundleMeta {
  n: number;
  frames: number;
  seed: number;
  view_mode: string;
  alphas: number[];
  relation: string;
}

export interface BundleVertex {
  id: number;
  label: string;
  stability: number;
}

export interface FrameStats {
  density: number;
  isolates: number;
  communities: number;
}

export interface BundleFrame {
  index: number;
  edges: [number, number][];
  /** positions per anchoring level, keyed by the level's canonical string */
  positions: Record<string, [number, number][]>;
  labels: number[];
  colors: number[];
  stats: FrameStats;
}

export interface FrameBundle {
  meta: BundleMeta;
  vertices: BundleVertex[];
  frames: BundleFrame[];
}

/** Tableau-10, indexed by the color ids in the bundle. */
export const TABLEAU10 = [
  "#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd",
  "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
] as const;
