"""Community detection per realization and matching across the sequence.

Detection is greedy agglomerative modularity maximization with fixed tie
breaking, so results are reproducible. Matching counts, for every vertex
pair, how many realizations put the pair in one community (the
co-community graph), derives per-vertex stability scores from a
threshold sweep over those counts, and assigns palette colors so that a
community keeps its color wherever its stable core reappears.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import GraphRealization

PALETTE_SIZE = 10  # Tableau-10


@dataclass(frozen=True)
class CommunityAssignment:
    """Community label per vertex for one realization; labels are
    contiguous small integers starting at 0."""

    realization_index: int
    labels: tuple[int, ...]

    def __post_init__(self):
        distinct = set(self.labels)
        if distinct != set(range(len(distinct))):
            raise ValidationError(f"labels must be contiguous from 0, got {sorted(distinct)}")


@dataclass(frozen=True)
class CoCommunityGraph:
    """Symmetric pair counts: weights[i, j] = number of realizations in
    which i and j share a community (diagonal unused)."""

    n: int
    weights: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights)
        if w.shape != (self.n, self.n):
            raise ValidationError(f"weights must be {self.n}x{self.n}, got {w.shape}")
        if (w != w.T).any():
            raise ValidationError("co-community weights must be symmetric")


@dataclass(frozen=True)
class StabilityScores:
    """Per-vertex threshold at which the vertex became an isolate during
    the co-community sweep; N+1 if it never did."""

    scores: tuple[int, ...]


@dataclass(frozen=True)
class ColorAssignment:
    """Palette colors per vertex per realization.

    ``palette`` lists the Tableau-10 indices in hand-out order (cycling
    past 10); ``colors[frame][vertex]`` is the displayed index.
    """

    palette: tuple[int, ...]
    colors: tuple[tuple[int, ...], ...]


def detect_communities(realization: GraphRealization) -> CommunityAssignment:
    """Greedy agglomerative modularity maximization.

    Starts from singletons and repeatedly merges the community pair with
    the largest modularity gain while a strictly positive gain exists.
    Ties break on the smallest (min-vertex, max-vertex) pair of the two
    groups' least members. Gains are compared in exact integer arithmetic
    (scaled by 2*m^2), so tie handling does not depend on float rounding.
    Isolates keep singleton communities. Edges are read undirected.
    """
    n = realization.n
    pairs = realization.undirected_pairs()
    m = len(pairs)
    if m == 0:
        return CommunityAssignment(realization.index, tuple(range(n)))

    degree = [0] * n
    for i, j in pairs:
        degree[i] += 1
        degree[j] += 1

    # Community state: members, total degree, cross-community edge counts.
    members: dict[int, set[int]] = {v: {v} for v in range(n)}
    comm_degree: dict[int, int] = {v: degree[v] for v in range(n)}
    cross: dict[int, dict[int, int]] = {v: {} for v in range(n)}
    for i, j in pairs:
        cross[i][j] = cross[i].get(j, 0) + 1
        cross[j][i] = cross[j].get(i, 0) + 1

    while True:
        best_gain = 0
        best_key = None
        best_pair = None
        for c, neighbors in cross.items():
            for d, e_cd in neighbors.items():
                if d <= c:
                    continue
                # gain * 2m^2 = 2*m*e_cd - deg_c*deg_d
                gain = 2 * m * e_cd - comm_degree[c] * comm_degree[d]
                if gain <= 0:
                    continue
                lo, hi = sorted((min(members[c]), min(members[d])))
                key = (lo, hi)
                if best_pair is None or gain > best_gain or (gain == best_gain and key < best_key):
                    best_gain, best_key, best_pair = gain, key, (c, d)
        if best_pair is None:
            break
        c, d = best_pair
        members[c] |= members.pop(d)
        comm_degree[c] += comm_degree.pop(d)
        d_neighbors = cross.pop(d)
        for other, count in d_neighbors.items():
            if other == c:
                continue
            cross[other].pop(d)
            cross[other][c] = cross[other].get(c, 0) + count
            cross[c][other] = cross[c].get(other, 0) + count
        cross[c].pop(d, None)

    ordered = sorted(members.values(), key=min)
    labels = [0] * n
    for new_id, group in enumerate(ordered):
        for v in group:
            labels[v] = new_id
    return CommunityAssignment(realization.index, tuple(labels))


def build_co_community_graph(assignments: list[CommunityAssignment]) -> CoCommunityGraph:
    """Count, per vertex pair, the realizations in which both share a label."""
    if len(assignments) < 1:
        raise ValidationError("need at least one assignment")
    n = len(assignments[0].labels)
    for a in assignments:
        if len(a.labels) != n:
            raise ValidationError(
                f"assignment for realization {a.realization_index} has "
                f"{len(a.labels)} vertices, expected {n}"
            )
    weights = np.zeros((n, n), dtype=np.int64)
    for a in assignments:
        lab = np.asarray(a.labels)
        weights += lab[:, None] == lab[None, :]
    np.fill_diagonal(weights, 0)
    return CoCommunityGraph(n=n, weights=weights)


def stability_scores(cocom: CoCommunityGraph, n_realizations: int) -> StabilityScores:
    """Score each vertex by the sweep threshold at which it isolates.

    Sweeping t = 1..N removes co-community edges with weight < t; a vertex
    isolates at the first t exceeding its largest incident weight, which is
    max_weight + 1, capped at N+1 for vertices that survive the whole sweep.
    """
    w = np.asarray(cocom.weights)
    if w.size and w.max() > n_realizations:
        raise ValidationError(
            f"weights exceed sequence length {n_realizations}: max {w.max()}"
        )
    if cocom.n == 1:
        return StabilityScores((1,))
    masked = w.copy()
    np.fill_diagonal(masked, 0)
    max_incident = masked.max(axis=1)
    scores = np.minimum(max_incident + 1, n_realizations + 1)
    return StabilityScores(tuple(int(s) for s in scores))


def _components(adj: np.ndarray) -> list[frozenset[int]]:
    n = adj.shape[0]
    seen = [False] * n
    comps = []
    for start in range(n):
        if seen[start]:
            continue
        stack = [start]
        seen[start] = True
        comp = {start}
        while stack:
            v = stack.pop()
            for u in np.nonzero(adj[v])[0]:
                u = int(u)
                if not seen[u]:
                    seen[u] = True
                    comp.add(u)
                    stack.append(u)
        comps.append(frozenset(comp))
    return comps


def assign_colors(
    assignments: list[CommunityAssignment],
    scores: StabilityScores,
    cocom: CoCommunityGraph,
    n_realizations: int,
) -> ColorAssignment:
    """Color communities consistently across realizations.

    Re-runs the threshold sweep on the co-community graph. Whenever a
    connected component appears that was not seen at a lower threshold,
    the next palette color goes to its highest-stability uncolored vertex
    (ties: lowest id); components arriving at the same threshold are
    processed by lowest member id. Vertices still uncolored after the
    sweep take the next colors in stability order. Within each
    realization, every community displays the color of its
    highest-stability member, so identical member sets show one color in
    every frame where they recur.
    """
    n = cocom.n
    if len(scores.scores) != n:
        raise ValidationError("stability scores do not cover the vertex set")
    for a in assignments:
        if len(a.labels) != n:
            raise ValidationError("assignments do not cover the vertex set")

    base: dict[int, int] = {}
    next_color = 0
    seen_components: set[frozenset[int]] = set()
    rank = lambda v: (-scores.scores[v], v)
    for t in range(1, n_realizations + 1):
        adj = np.asarray(cocom.weights) >= t
        np.fill_diagonal(adj, False)
        for comp in sorted(_components(adj), key=min):
            if comp in seen_components:
                continue
            seen_components.add(comp)
            uncolored = [v for v in comp if v not in base]
            if uncolored:
                base[min(uncolored, key=rank)] = next_color
                next_color += 1
    for v in sorted(range(n), key=rank):
        if v not in base:
            base[v] = next_color
            next_color += 1

    palette = tuple(k % PALETTE_SIZE for k in range(next_color))
    frames = []
    for a in assignments:
        groups: dict[int, list[int]] = {}
        for v, lab in enumerate(a.labels):
            groups.setdefault(lab, []).append(v)
        frame = [0] * n
        for group in groups.values():
            rep = min(group, key=rank)
            color = base[rep] % PALETTE_SIZE
            for v in group:
                frame[v] = color
        frames.append(tuple(frame))
    return ColorAssignment(palette=palette, colors=tuple(frames))
