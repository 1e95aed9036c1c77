"""Stress-based layouts for realization sequences.

The reference layout embeds mean shortest-path distances aggregated over
all realizations, weighting stable dyads more heavily. Per-realization
layouts then trade off that realization's own stress against squared
displacement from the reference, controlled by an anchoring parameter
alpha in [0, 1]: alpha=0 optimizes each frame independently, alpha=1
freezes every frame at the reference.

Both problems are solved by iterative majorization: each iteration solves
the quadratic upper bound exactly, so the objective never increases.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .model import GraphRealization, RealizationSequence, apply_view

DEFAULT_ALPHAS = tuple(round(0.1 * i, 1) for i in range(11))
DEFAULT_TOL = 1e-6
DEFAULT_MAX_ITER = 500


@dataclass(frozen=True)
class DistanceMatrix:
    """Pairwise shortest-path hop counts with unreachable pairs
    substituted by n (flagged in ``reachable``)."""

    n: int
    delta: np.ndarray
    reachable: np.ndarray


@dataclass(frozen=True)
class AggregatedDistances:
    """Mean distances over a sequence plus stability-aware stress weights
    1/mean^2 * 1/(1 + variance)."""

    n: int
    delta_bar: np.ndarray
    variance: np.ndarray
    weights: np.ndarray


@dataclass(frozen=True)
class Layout:
    """2-D positions with the solve's final objective value and history."""

    positions: np.ndarray
    alpha: float
    stress: float
    iterations: int
    converged: bool
    objective_history: tuple[float, ...]


@dataclass(frozen=True)
class LayoutSet:
    """Reference layout plus one anchored layout per (alpha, realization)."""

    reference: Layout
    alphas: tuple[float, ...]
    layouts: dict[float, tuple[Layout, ...]]


def distance_matrix(realization: GraphRealization) -> DistanceMatrix:
    """BFS hop distances between all vertex pairs, edges read undirected."""
    n = realization.n
    adj: list[list[int]] = [[] for _ in range(n)]
    for i, j in realization.undirected_pairs():
        adj[i].append(j)
        adj[j].append(i)
    delta = np.full((n, n), float(n))
    reachable = np.zeros((n, n), dtype=bool)
    for src in range(n):
        delta[src, src] = 0.0
        reachable[src, src] = True
        dist = {src: 0}
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for u in adj[v]:
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        for v, d in dist.items():
            delta[src, v] = float(d)
            reachable[src, v] = True
    return DistanceMatrix(n=n, delta=delta, reachable=reachable)


def aggregate_distances(matrices: list[DistanceMatrix]) -> AggregatedDistances:
    """Mean and population variance of distances across realizations, and
    the derived stress weights."""
    if len(matrices) < 1:
        raise ValidationError("need at least one distance matrix")
    n = matrices[0].n
    for m in matrices:
        if m.n != n:
            raise ValidationError(f"distance matrix sizes differ: {m.n} vs {n}")
    stack = np.stack([m.delta for m in matrices])
    delta_bar = stack.mean(axis=0)
    variance = stack.var(axis=0)
    weights = np.zeros((n, n))
    off = ~np.eye(n, dtype=bool)
    weights[off] = 1.0 / (delta_bar[off] ** 2) / (1.0 + variance[off])
    return AggregatedDistances(n=n, delta_bar=delta_bar, variance=variance, weights=weights)


def stress(positions: np.ndarray, delta: np.ndarray, weights: np.ndarray) -> float:
    """Weighted squared mismatch between target and embedded distances,
    summed over unordered pairs."""
    positions = np.asarray(positions, dtype=float)
    diff = positions[:, None, :] - positions[None, :, :]
    dist = np.sqrt((diff**2).sum(axis=2))
    iu = np.triu_indices(len(positions), k=1)
    residual = delta[iu] - dist[iu]
    return float((weights[iu] * residual**2).sum())


def _per_pair_weights(dist: DistanceMatrix) -> np.ndarray:
    """Standard stress weights 1/delta^2 for a single realization."""
    n = dist.n
    weights = np.zeros((n, n))
    off = ~np.eye(n, dtype=bool)
    weights[off] = 1.0 / (dist.delta[off] ** 2)
    return weights


def _weighted_laplacian(weights: np.ndarray) -> np.ndarray:
    lap = -weights.copy()
    np.fill_diagonal(lap, 0.0)
    np.fill_diagonal(lap, -lap.sum(axis=1))
    return lap


def _majorize(
    delta: np.ndarray,
    weights: np.ndarray,
    init: np.ndarray,
    alpha: float,
    reference: np.ndarray | None,
    tol: float,
    max_iter: int,
) -> Layout:
    """Minimize (1-alpha)*stress + alpha*||P - reference||^2 by majorization.

    Each step solves [(1-alpha)V + alpha*I] P = (1-alpha) B(Z) Z + alpha*R,
    the exact minimizer of the convex quadratic that bounds the objective
    at the current iterate Z, so the objective is non-increasing. Stops
    when the relative decrease drops below ``tol``.
    """
    n = len(delta)
    lap = _weighted_laplacian(weights)
    if alpha > 0.0:
        system = (1.0 - alpha) * lap + alpha * np.eye(n)
        solver = np.linalg.inv(system)
    else:
        solver = np.linalg.pinv(lap)

    iu = np.triu_indices(n, k=1)
    delta_iu = delta[iu]
    weights_iu = weights[iu]

    def evaluate(pos: np.ndarray) -> tuple[float, np.ndarray]:
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=2))
        residual = delta_iu - dist[iu]
        value = (1.0 - alpha) * float((weights_iu * residual**2).sum())
        if alpha > 0.0:
            value += alpha * float(((pos - reference) ** 2).sum())
        return value, dist

    pos = np.array(init, dtype=float)
    value, dist = evaluate(pos)
    history = [value]
    converged = False
    for _ in range(max_iter):
        prev = history[-1]
        if prev == 0.0:
            converged = True
            break
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dist > 0.0, delta / dist, 0.0)
        bmat = -weights * ratio
        np.fill_diagonal(bmat, 0.0)
        np.fill_diagonal(bmat, -bmat.sum(axis=1))
        rhs = (1.0 - alpha) * (bmat @ pos)
        if alpha > 0.0:
            rhs += alpha * reference
        pos = solver @ rhs
        value, dist = evaluate(pos)
        history.append(value)
        if prev - value < tol * prev:
            converged = True
            break
    return Layout(
        positions=pos,
        alpha=alpha,
        stress=history[-1],
        iterations=len(history) - 1,
        converged=converged,
        objective_history=tuple(history),
    )


def _initial_positions(n: int, seed: int) -> np.ndarray:
    """Seeded uniform placement in the unit disk."""
    rng = np.random.default_rng(seed)
    radius = np.sqrt(rng.random(n))
    angle = rng.random(n) * 2.0 * np.pi
    return np.column_stack((radius * np.cos(angle), radius * np.sin(angle)))


def minimize_reference(
    agg: AggregatedDistances,
    seed: int,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Layout:
    """Reference layout: majorize aggregated stress from a seeded random
    start. Non-convergence within ``max_iter`` is reported via the
    ``converged`` flag, not raised."""
    if agg.n < 2:
        raise ValidationError("reference layout needs at least 2 vertices")
    init = _initial_positions(agg.n, seed)
    return _majorize(agg.delta_bar, agg.weights, init, 0.0, None, tol, max_iter)


def minimize_anchored(
    dist: DistanceMatrix,
    reference: Layout,
    alpha: float,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> Layout:
    """Anchored layout for one realization, initialized at the reference.

    Minimizes (1-alpha) * per-realization stress (weights 1/delta^2)
    + alpha * squared displacement from the reference positions.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValidationError(f"alpha {alpha} outside [0, 1]")
    ref = np.asarray(reference.positions, dtype=float)
    if len(ref) != dist.n:
        raise ValidationError(
            f"reference has {len(ref)} vertices, distances have {dist.n}"
        )
    weights = _per_pair_weights(dist)
    return _majorize(dist.delta, weights, ref, alpha, ref, tol, max_iter)


def layout_set(
    sequence: RealizationSequence,
    alphas: tuple[float, ...] = DEFAULT_ALPHAS,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> LayoutSet:
    """One reference layout plus anchored layouts for every (alpha, frame).

    Realizations are read through the sequence's view mode. Deterministic
    for fixed (sequence, alphas, seed).
    """
    alphas = tuple(float(a) for a in alphas)
    if not alphas:
        raise ValidationError("alphas must be non-empty")
    if any(not 0.0 <= a <= 1.0 for a in alphas):
        raise ValidationError(f"alphas outside [0, 1]: {alphas}")
    if any(b <= a for a, b in zip(alphas, alphas[1:])):
        raise ValidationError(f"alphas must be strictly increasing: {alphas}")
    viewed = [apply_view(r, sequence.view_mode) for r in sequence.realizations]
    matrices = [distance_matrix(r) for r in viewed]
    reference = minimize_reference(aggregate_distances(matrices), seed, tol, max_iter)
    layouts = {
        alpha: tuple(minimize_anchored(m, reference, alpha, tol, max_iter) for m in matrices)
        for alpha in alphas
    }
    return LayoutSet(reference=reference, alphas=alphas, layouts=layouts)
