/** Canvas painter for scenes, plus the optional 150 ms position tween
 * between consecutive frames (hard cut when disabled). */

import type { NodeOp, Scene } from "./scene.js";

export const TWEEN_MS = 150;

export function paint(ctx: CanvasRenderingContext2D, scene: Scene): void {
  ctx.clearRect(0, 0, scene.width, scene.height);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, scene.width, scene.height);

  for (const hull of scene.hulls) {
    ctx.beginPath();
    hull.points.forEach((p, i) => (i === 0 ? ctx.moveTo(p.x, p.y) : ctx.lineTo(p.x, p.y)));
    ctx.closePath();
    ctx.globalAlpha = 0.18;
    ctx.fillStyle = hull.color;
    ctx.fill();
    ctx.globalAlpha = 0.6;
    ctx.strokeStyle = hull.color;
    ctx.lineWidth = 1.5;
    ctx.stroke();
    ctx.globalAlpha = 1;
  }
  for (const halo of scene.halos) {
    ctx.globalAlpha = 0.25;
    ctx.fillStyle = halo.color;
    if (halo.points.length === 2) {
      const [a, b] = halo.points;
      ctx.beginPath();
      ctx.moveTo(a!.x, a!.y);
      ctx.lineTo(b!.x, b!.y);
      ctx.lineWidth = halo.radius * 2;
      ctx.lineCap = "round";
      ctx.strokeStyle = halo.color;
      ctx.stroke();
      ctx.lineCap = "butt";
    } else {
      for (const p of halo.points) {
        ctx.beginPath();
        ctx.arc(p.x, p.y, halo.radius, 0, Math.PI * 2);
        ctx.fill();
      }
    }
    ctx.globalAlpha = 1;
  }
  for (const edge of scene.edges) {
    ctx.globalAlpha = edge.opacity;
    ctx.strokeStyle = edge.color;
    ctx.lineWidth = edge.width;
    ctx.beginPath();
    ctx.moveTo(edge.x1, edge.y1);
    ctx.lineTo(edge.x2, edge.y2);
    ctx.stroke();
    ctx.globalAlpha = 1;
  }
  for (const node of scene.nodes) {
    ctx.beginPath();
    ctx.arc(node.x, node.y, node.radius, 0, Math.PI * 2);
    ctx.fillStyle = node.fill;
    ctx.fill();
    ctx.lineWidth = 1.5;
    ctx.strokeStyle = node.stroke;
    ctx.stroke();
  }
  if (scene.labels.length > 0) {
    ctx.fillStyle = "#1a1a1a";
    ctx.font = "11px sans-serif";
    ctx.textAlign = "center";
    for (const label of scene.labels) {
      ctx.fillText(label.text, label.x, label.y);
    }
  }
}

function lerpNodes(from: NodeOp[], to: NodeOp[], t: number): NodeOp[] {
  if (from.length !== to.length) return to;
  return to.map((node, i) => ({
    ...node,
    x: from[i]!.x + (node.x - from[i]!.x) * t,
    y: from[i]!.y + (node.y - from[i]!.y) * t,
  }));
}

/** Paint with a short node-position tween from the previous scene.
 * Edges/hulls swap immediately (hard cut); only nodes glide. */
export function paintWithTween(
  ctx: CanvasRenderingContext2D,
  previous: Scene | null,
  scene: Scene,
  requestFrame: (cb: (time: number) => void) => void = (cb) =>
    requestAnimationFrame(cb),
): void {
  if (!previous || previous.alphaKey !== scene.alphaKey) {
    paint(ctx, scene);
    return;
  }
  const start = performance.now();
  const step = (time: number) => {
    const t = Math.min(1, (time - start) / TWEEN_MS);
    paint(ctx, { ...scene, nodes: lerpNodes(previous.nodes, scene.nodes, t) });
    if (t < 1) requestFrame(step);
  };
  requestFrame(step);
}
