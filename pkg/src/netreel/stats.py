"""Per-realization network statistics and their across-sequence distributions."""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .community import ColorAssignment, CommunityAssignment, detect_communities
from .errors import ValidationError
from .model import GraphRealization, RealizationSequence, apply_view

STATISTIC_NAMES = ("density", "isolates", "shortest-path", "communities")


@dataclass(frozen=True)
class StatSpec:
    """Which statistic to collect; shortest-path carries its endpoints."""

    name: str
    source: int | None = None
    target: int | None = None

    def __post_init__(self):
        if self.name not in STATISTIC_NAMES:
            raise ValidationError(
                f"unknown statistic {self.name!r}; expected one of {STATISTIC_NAMES}"
            )
        if self.name == "shortest-path":
            if self.source is None or self.target is None:
                raise ValidationError("shortest-path needs source and target vertices")
            if self.source == self.target:
                raise ValidationError("shortest-path endpoints must differ")
        elif self.source is not None or self.target is not None:
            raise ValidationError(f"{self.name} takes no source/target")


@dataclass(frozen=True)
class StatDistribution:
    """One value per realization, in sequence order. Path queries that hit
    an unreachable pair are counted separately, never mixed into values."""

    statistic: str
    values: tuple[float, ...]
    n_samples: int
    unreachable_count: int = 0

    def __post_init__(self):
        if len(self.values) + self.unreachable_count != self.n_samples:
            raise ValidationError(
                f"{len(self.values)} values + {self.unreachable_count} unreachable "
                f"!= {self.n_samples} samples"
            )


def _check_vertex(realization: GraphRealization, v: int) -> None:
    if not 0 <= v < realization.n:
        raise ValidationError(f"vertex {v} outside 0..{realization.n - 1}")


def _view_pairs(realization: GraphRealization, view_mode: str):
    """Unordered pairs present under an undirected view (no realization copy)."""
    if view_mode == "undirected-union":
        return realization.undirected_pairs()
    if view_mode == "undirected-mutual":
        return realization.mutual_pairs()
    raise ValidationError(f"unknown view mode {view_mode!r}")


def density(realization: GraphRealization, view_mode: str) -> float:
    """Edge count over potential edges in the chosen view."""
    if realization.n < 2:
        raise ValidationError("density needs at least 2 vertices")
    n = realization.n
    if view_mode == "directed":
        return len(realization.edges) / (n * (n - 1))
    return len(_view_pairs(realization, view_mode)) / (n * (n - 1) / 2)


def isolates(realization: GraphRealization, view_mode: str) -> int:
    """Number of vertices with no incident edge in the chosen view."""
    if view_mode == "directed":
        touched = {v for edge in realization.edges for v in edge}
    else:
        touched = {v for pair in _view_pairs(realization, view_mode) for v in pair}
    return realization.n - len(touched)


def shortest_path(
    realization: GraphRealization, source: int, target: int, view_mode: str
) -> int | None:
    """BFS hop count from source to target in the chosen view; None when
    target is unreachable (never a substitute number)."""
    _check_vertex(realization, source)
    _check_vertex(realization, target)
    if source == target:
        raise ValidationError("source and target must differ")
    viewed = apply_view(realization, view_mode)
    adj: dict[int, list[int]] = {}
    for i, j in viewed.edges:
        adj.setdefault(i, []).append(j)
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if v == target:
            return dist[v]
        for u in adj.get(v, ()):
            if u not in dist:
                dist[u] = dist[v] + 1
                queue.append(u)
    return None


def community_count(assignment: CommunityAssignment) -> int:
    return len(set(assignment.labels))


def edge_occurrence(sequence: RealizationSequence, i: int, j: int) -> float:
    """Fraction of realizations containing edge (i, j) in the sequence's view."""
    _check_vertex(sequence.realizations[0], i)
    _check_vertex(sequence.realizations[0], j)
    if i == j:
        raise ValidationError("edge endpoints must differ")
    hits = sum(
        1 for r in sequence.realizations if (i, j) in apply_view(r, sequence.view_mode).edges
    )
    return hits / len(sequence)


def node_stability(colors: ColorAssignment, vertex: int) -> float:
    """Fraction of realizations in which the vertex shows its most frequent
    color (ties on frequency break toward the lowest color id)."""
    if not colors.colors:
        raise ValidationError("empty color assignment")
    if not 0 <= vertex < len(colors.colors[0]):
        raise ValidationError(f"vertex {vertex} outside color assignment")
    counts = Counter(frame[vertex] for frame in colors.colors)
    top = max(counts.values())
    modal = min(c for c, k in counts.items() if k == top)
    return counts[modal] / len(colors.colors)


def distribution(sequence: RealizationSequence, spec: StatSpec) -> StatDistribution:
    """Collect the statistic over every realization, in order.

    Communities are detected on the fly with the package's detector (in the
    sequence's view). Unreachable shortest-path frames are tallied in
    ``unreachable_count`` and excluded from the numeric values.
    """
    mode = sequence.view_mode
    values: list[float] = []
    unreachable = 0
    for r in sequence.realizations:
        if spec.name == "density":
            values.append(density(r, mode))
        elif spec.name == "isolates":
            values.append(float(isolates(r, mode)))
        elif spec.name == "communities":
            values.append(float(community_count(detect_communities(apply_view(r, mode)))))
        else:
            hops = shortest_path(r, spec.source, spec.target, mode)
            if hops is None:
                unreachable += 1
            else:
                values.append(float(hops))
    return StatDistribution(
        statistic=spec.name,
        values=tuple(values),
        n_samples=len(sequence),
        unreachable_count=unreachable,
    )
