/** DOM wiring: one store around the reducer, controls dispatching actions,
 * and a painter subscribed to state changes. */

import { Player } from "./player.js";
import { paint, paintWithTween } from "./render.js";
import { buildScene, type Scene } from "./scene.js";
import {
  SPEED_MAX,
  SPEED_MIN,
  bundleInfo,
  initialState,
  reduce,
  type Action,
  type BundleInfo,
  type ViewerState,
} from "./state.js";
import type { FrameBundle } from "./types.js";
import { validateBundle } from "./validate.js";

function byId<T extends HTMLElement>(id: string): T {
  const element = document.getElementById(id);
  if (!element) throw new Error(`missing element #${id}`);
  return element as T;
}

const canvas = byId<HTMLCanvasElement>("view");
const ctx = canvas.getContext("2d")!;
const banner = byId<HTMLDivElement>("banner");
const scrubber = byId<HTMLInputElement>("scrubber");
const frameLabel = byId<HTMLSpanElement>("frame-label");
const speedSlider = byId<HTMLInputElement>("speed");
const speedLabel = byId<HTMLSpanElement>("speed-label");
const alphaSelect = byId<HTMLSelectElement>("alpha");
const statsLabel = byId<HTMLSpanElement>("stats-label");

let bundle: FrameBundle | null = null;
let info: BundleInfo | null = null;
let state: ViewerState | null = null;
let lastScene: Scene | null = null;

const player = new Player(
  () => state!,
  () => dispatch({ type: "tick" }),
);

function dispatch(action: Action): void {
  if (!bundle || !info || !state) return;
  state = reduce(state, action, info);
  player.sync();
  render();
}

function render(): void {
  if (!bundle || !state) return;
  const scene = buildScene(bundle, state, canvas.width, canvas.height);
  if (state.tween && lastScene && lastScene.frame !== scene.frame) {
    paintWithTween(ctx, lastScene, scene);
  } else {
    paint(ctx, scene);
  }
  lastScene = scene;
  syncControls();
}

function syncControls(): void {
  if (!bundle || !state) return;
  scrubber.value = String(state.frame);
  frameLabel.textContent = `${state.frame + 1} / ${bundle.frames.length}`;
  speedLabel.textContent = `${state.secondsPerFrame.toFixed(1)} s/frame`;
  speedSlider.value = String(state.secondsPerFrame);
  alphaSelect.value = state.alphaKey;
  const stats = bundle.frames[state.frame]?.stats;
  if (stats) {
    statsLabel.textContent =
      `density ${stats.density.toFixed(3)} | isolates ${stats.isolates} | ` +
      `communities ${stats.communities}`;
  }
  for (const name of ["darkEdges", "convexHulls", "nodeColor", "nodeLabels"] as const) {
    byId<HTMLInputElement>(`toggle-${name}`).checked = state.toggles[name];
  }
}

function showError(messages: string[]): void {
  banner.textContent = messages.slice(0, 5).join(" — ");
  banner.hidden = false;
}

function loadBundle(data: unknown): void {
  const result = validateBundle(data);
  if (!result.bundle) {
    showError(result.errors);
    return; // no partial render: previous bundle (if any) stays up
  }
  banner.hidden = true;
  bundle = result.bundle;
  info = bundleInfo(bundle);
  state = initialState(info);
  lastScene = null;

  scrubber.max = String(bundle.frames.length - 1);
  scrubber.disabled = bundle.frames.length < 2;
  for (const id of ["play-fwd", "play-back"]) {
    byId<HTMLButtonElement>(id).disabled = bundle.frames.length < 2;
  }
  alphaSelect.replaceChildren(
    ...info.alphaKeys.map((key) => {
      const option = document.createElement("option");
      option.value = key;
      option.textContent = key;
      return option;
    }),
  );
  byId<HTMLSpanElement>("title-label").textContent =
    `${bundle.meta.relation || "bundle"} — n=${bundle.meta.n}, ` +
    `${bundle.frames.length} frames, view ${bundle.meta.view_mode}`;
  player.stop();
  render();
}

byId<HTMLInputElement>("file").addEventListener("change", async (event) => {
  const input = event.currentTarget as HTMLInputElement;
  const file = input.files?.[0];
  if (!file) return;
  try {
    loadBundle(JSON.parse(await file.text()));
  } catch (error) {
    showError([`not valid JSON: ${String(error)}`]);
  }
});

byId<HTMLButtonElement>("play-fwd").addEventListener("click", () =>
  dispatch({ type: "play", direction: 1 }),
);
byId<HTMLButtonElement>("play-back").addEventListener("click", () =>
  dispatch({ type: "play", direction: -1 }),
);
byId<HTMLButtonElement>("pause").addEventListener("click", () => dispatch({ type: "pause" }));
byId<HTMLButtonElement>("reset").addEventListener("click", () => dispatch({ type: "reset" }));

scrubber.addEventListener("input", () =>
  dispatch({ type: "setFrame", frame: Number(scrubber.value) }),
);
speedSlider.min = String(SPEED_MIN);
speedSlider.max = String(SPEED_MAX);
speedSlider.step = "0.1";
speedSlider.addEventListener("input", () =>
  dispatch({ type: "setSpeed", secondsPerFrame: Number(speedSlider.value) }),
);
alphaSelect.addEventListener("change", () =>
  dispatch({ type: "setAlpha", level: alphaSelect.value }),
);
for (const name of ["darkEdges", "convexHulls", "nodeColor", "nodeLabels"] as const) {
  byId<HTMLInputElement>(`toggle-${name}`).addEventListener("click", () =>
    dispatch({ type: "toggle", name }),
  );
}
byId<HTMLInputElement>("toggle-tween").addEventListener("click", (event) =>
  dispatch({ type: "setTween", enabled: (event.currentTarget as HTMLInputElement).checked }),
);

byId<HTMLButtonElement>("highlight-apply").addEventListener("click", () => {
  const vertexText = byId<HTMLInputElement>("highlight-vertices").value.trim();
  const edgeText = byId<HTMLInputElement>("highlight-edges").value.trim();
  const vertices = vertexText
    ? vertexText.split(",").map((s) => Number(s.trim())).filter(Number.isFinite)
    : [];
  const edges: [number, number][] = edgeText
    ? edgeText
        .split(",")
        .map((pair) => pair.split("-").map((s) => Number(s.trim())))
        .filter((p): p is [number, number] => p.length === 2 && p.every(Number.isFinite))
    : [];
  dispatch({ type: "setHighlight", vertices, edges });
});

const params = new URLSearchParams(window.location.search);
const url = params.get("bundle");
if (url) {
  fetch(url)
    .then((response) => response.json())
    .then(loadBundle)
    .catch((error) => showError([`could not fetch ${url}: ${String(error)}`]));
}
