"""End-to-end pipeline orchestration and the frame-bundle wire format.

A frame bundle is a single self-contained JSON document: sampled edges,
positions for every anchoring level, community labels and colors, and
per-frame statistics. Precomputing all anchoring levels lets a viewer
switch stability instantly without re-running any solver.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .community import (
    assign_colors,
    build_co_community_graph,
    detect_communities,
    stability_scores,
)
from .errors import ParseError, ValidationError
from .layout import DEFAULT_ALPHAS, DEFAULT_MAX_ITER, DEFAULT_TOL, layout_set
from .model import (
    ProbabilisticGraph,
    VIEW_MODES,
    apply_view,
    sample_realizations,
)
from .stats import community_count, density, isolates


def alpha_key(alpha: float) -> str:
    """Canonical JSON key for an anchoring level ("0.1", "1.0", ...)."""
    return repr(float(alpha))


@dataclass(frozen=True)
class FrameBundle:
    """Parsed frame bundle; mirrors the JSON schema one-to-one."""

    meta: dict
    vertices: list[dict]
    frames: list[dict]

    def to_dict(self) -> dict:
        return {"meta": self.meta, "vertices": self.vertices, "frames": self.frames}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @property
    def alphas(self) -> list[float]:
        return list(self.meta["alphas"])


def build_bundle(
    graph: ProbabilisticGraph,
    frames: int = 150,
    alphas: tuple[float, ...] = DEFAULT_ALPHAS,
    seed: int = 0,
    view_mode: str = "undirected-union",
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
    relation: str = "",
) -> tuple[FrameBundle, list[str]]:
    """Run sample -> detect -> match -> layouts -> stats and assemble the
    bundle. Returns the bundle plus diagnostics for any layout solve that
    stopped at the iteration cap without converging."""
    sequence = sample_realizations(graph, frames, seed, view_mode)
    viewed = [apply_view(r, view_mode) for r in sequence.realizations]
    assignments = [detect_communities(r) for r in viewed]
    cocom = build_co_community_graph(assignments)
    scores = stability_scores(cocom, frames)
    colors = assign_colors(assignments, scores, cocom, frames)
    layouts = layout_set(sequence, alphas, seed, tol, max_iter)

    diagnostics = []
    if not layouts.reference.converged:
        diagnostics.append("reference layout did not converge")
    for alpha in alphas:
        for idx, lay in enumerate(layouts.layouts[alpha]):
            if not lay.converged:
                diagnostics.append(f"alpha {alpha_key(alpha)} frame {idx} did not converge")

    labels = graph.labels or tuple(str(i) for i in range(graph.n))
    vertices = [
        {"id": i, "label": labels[i], "stability": scores.scores[i]}
        for i in range(graph.n)
    ]
    frame_records = []
    for idx, view in enumerate(viewed):
        if view_mode == "directed":
            edges = sorted(view.edges)
        else:
            edges = sorted(view.undirected_pairs())
        positions = {
            alpha_key(alpha): [
                [float(x), float(y)] for x, y in layouts.layouts[alpha][idx].positions
            ]
            for alpha in alphas
        }
        frame_records.append(
            {
                "index": idx,
                "edges": [[i, j] for i, j in edges],
                "positions": positions,
                "labels": list(assignments[idx].labels),
                "colors": list(colors.colors[idx]),
                "stats": {
                    "density": density(view, view_mode),
                    "isolates": isolates(view, view_mode),
                    "communities": community_count(assignments[idx]),
                },
            }
        )
    meta = {
        "n": graph.n,
        "frames": frames,
        "seed": seed,
        "view_mode": view_mode,
        "alphas": [float(a) for a in alphas],
        "relation": relation,
    }
    return FrameBundle(meta=meta, vertices=vertices, frames=frame_records), diagnostics


def parse_bundle(text: str) -> FrameBundle:
    """Parse and validate a frame-bundle JSON document."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict) or set(data) != {"meta", "vertices", "frames"}:
        raise ParseError("bundle must have exactly the fields meta, vertices, frames")
    meta, vertices, frames = data["meta"], data["vertices"], data["frames"]
    if not isinstance(meta, dict) or set(meta) != {
        "n", "frames", "seed", "view_mode", "alphas", "relation",
    }:
        raise ParseError("meta must have n, frames, seed, view_mode, alphas, relation")
    n = meta["n"]
    if not isinstance(n, int) or n < 1:
        raise ParseError("meta.n must be a positive integer")
    if meta["view_mode"] not in VIEW_MODES:
        raise ParseError(f"meta.view_mode must be one of {VIEW_MODES}")
    if not isinstance(vertices, list) or len(vertices) != n:
        raise ParseError(f"expected {n} vertex records")
    if not isinstance(frames, list) or len(frames) != meta["frames"]:
        raise ParseError(f"expected {meta['frames']} frame records, got {len(frames)}")
    keys = [alpha_key(a) for a in meta["alphas"]]
    for record in frames:
        if not isinstance(record, dict):
            raise ParseError("frame records must be objects")
        for field in ("index", "edges", "positions", "labels", "colors", "stats"):
            if field not in record:
                raise ParseError(f"frame {record.get('index', '?')} missing {field!r}")
        if len(record["labels"]) != n or len(record["colors"]) != n:
            raise ParseError(f"frame {record['index']}: label/color arrays must have length {n}")
        for key in keys:
            if key not in record["positions"]:
                raise ParseError(f"frame {record['index']} missing positions for alpha {key}")
            if len(record["positions"][key]) != n:
                raise ParseError(f"frame {record['index']} alpha {key}: expected {n} positions")
        for i, j in record["edges"]:
            if not (0 <= i < n and 0 <= j < n):
                raise ParseError(f"frame {record['index']}: edge ({i}, {j}) outside 0..{n - 1}")
    return FrameBundle(meta=meta, vertices=vertices, frames=frames)
