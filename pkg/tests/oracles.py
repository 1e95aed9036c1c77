"""Independent brute-force oracles used across the test suite.

Everything here recomputes results by a different route than the library:
Floyd-Warshall instead of BFS, exhaustive partition enumeration instead
of greedy merging, Hungarian assignment instead of sorted matching, and
naive double loops instead of vectorized sums.
"""

from functools import lru_cache

import numpy as np
from scipy.optimize import linear_sum_assignment


def floyd_warshall(n, undirected_pairs):
    """All-pairs hop distances; inf where unreachable."""
    dist = np.full((n, n), np.inf)
    np.fill_diagonal(dist, 0.0)
    for i, j in undirected_pairs:
        dist[i, j] = 1.0
        dist[j, i] = 1.0
    for k in range(n):
        for i in range(n):
            for j in range(n):
                if dist[i, k] + dist[k, j] < dist[i, j]:
                    dist[i, j] = dist[i, k] + dist[k, j]
    return dist


def modularity(labels, undirected_pairs, n):
    """Newman modularity of a hard partition of an unweighted simple graph."""
    m = len(undirected_pairs)
    if m == 0:
        return 0.0
    degree = [0] * n
    for i, j in undirected_pairs:
        degree[i] += 1
        degree[j] += 1
    intra = {}
    total_degree = {}
    for i, j in undirected_pairs:
        if labels[i] == labels[j]:
            intra[labels[i]] = intra.get(labels[i], 0) + 1
    for v in range(n):
        total_degree[labels[v]] = total_degree.get(labels[v], 0) + degree[v]
    return sum(
        intra.get(c, 0) / m - (d / (2.0 * m)) ** 2 for c, d in total_degree.items()
    )


@lru_cache(maxsize=4)
def partitions_upto_k(n, k):
    """All set partitions of 0..n-1 into at most k blocks, as label rows
    in restricted-growth form."""
    rows = []

    def grow(prefix, used):
        if len(prefix) == n:
            rows.append(prefix.copy())
            return
        for label in range(min(used + 1, k - 1) + 1):
            prefix.append(label)
            grow(prefix, max(used, label))
            prefix.pop()

    grow([0], 0)
    return np.array(rows, dtype=np.int8)


def best_partition_upto_k(undirected_pairs, n, k=3):
    """Exhaustive max-modularity partition over partitions into <= k blocks.

    Vectorized: modularity(labels) = sum over same-label pairs of
    B[i, j] where B = (A - d d^T / 2m) / 2m.
    """
    m = len(undirected_pairs)
    adj = np.zeros((n, n))
    for i, j in undirected_pairs:
        adj[i, j] = 1.0
        adj[j, i] = 1.0
    degree = adj.sum(axis=1)
    bmat = (adj - np.outer(degree, degree) / (2.0 * m)) / (2.0 * m)
    rows = partitions_upto_k(n, k)
    masks = rows[:, :, None] == rows[:, None, :]
    scores = masks.reshape(len(rows), -1) @ bmat.reshape(-1)
    return tuple(int(v) for v in rows[int(np.argmax(scores))])


def canonical_labels(labels):
    """Relabel so labels appear in first-occurrence order starting at 0."""
    mapping = {}
    result = []
    for lab in labels:
        if lab not in mapping:
            mapping[lab] = len(mapping)
        result.append(mapping[lab])
    return tuple(result)


def hungarian_emd(user_positions, truth_positions):
    """Min-cost perfect matching on the full cost matrix of absolute
    differences, as mean per-ball distance."""
    u = np.asarray(user_positions, dtype=float)
    t = np.asarray(truth_positions, dtype=float)
    cost = np.abs(u[:, None] - t[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(cost[rows, cols].sum() / len(u))


def naive_stress(positions, delta, weights):
    """Direct double-loop evaluation of weighted stress."""
    total = 0.0
    n = len(positions)
    for i in range(n):
        for j in range(i + 1, n):
            d = np.sqrt(
                (positions[i][0] - positions[j][0]) ** 2
                + (positions[i][1] - positions[j][1]) ** 2
            )
            total += weights[i][j] * (delta[i][j] - d) ** 2
    return total


def plain_smacof(delta, weights, init, iterations=300):
    """Reference-free stress majorization (Guttman transform), written
    independently of the library's solver."""
    n = len(delta)
    lap = -np.asarray(weights, dtype=float).copy()
    np.fill_diagonal(lap, 0.0)
    np.fill_diagonal(lap, -lap.sum(axis=1))
    pinv = np.linalg.pinv(lap)
    pos = np.array(init, dtype=float)
    for _ in range(iterations):
        diff = pos[:, None, :] - pos[None, :, :]
        dist = np.sqrt((diff**2).sum(axis=2))
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(dist > 0, delta / dist, 0.0)
        bmat = -weights * ratio
        np.fill_diagonal(bmat, 0.0)
        np.fill_diagonal(bmat, -bmat.sum(axis=1))
        pos = pinv @ (bmat @ pos)
    return pos
