"""Probabilistic graph model: ingestion, validation, and Bernoulli sampling.

A probabilistic graph is a fixed vertex set where every ordered pair (i, j),
i != j, carries an occurrence probability. Sampling draws each edge as an
independent Bernoulli variable, producing a sequence of concrete graph
realizations that downstream stages lay out, color, and summarize.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import ParseError, ValidationError

VIEW_MODES = ("directed", "undirected-union", "undirected-mutual")


@dataclass(frozen=True)
class CssTensor:
    """Perceiver-indexed relation reports.

    ``cells[k, i, j]`` is perceiver k's 0/1 report on the ordered pair
    (i, j). The tensor is cube-shaped (n perceivers over n x n pairs) and
    diagonal entries i == j carry no meaning.
    """

    relation_name: str
    n: int
    cells: np.ndarray

    def __post_init__(self):
        cells = np.asarray(self.cells)
        if cells.shape != (self.n, self.n, self.n):
            raise ParseError(
                f"tensor must be cube-shaped {(self.n,) * 3}, got {cells.shape}"
            )
        off_diag = ~np.eye(self.n, dtype=bool)[None, :, :] & np.ones(
            (self.n, 1, 1), dtype=bool
        )
        values = cells[np.broadcast_to(off_diag, cells.shape)]
        if not np.isin(values, (0, 1)).all():
            bad = values[~np.isin(values, (0, 1))][0]
            raise ParseError(f"tensor cells must be 0 or 1, found {bad!r}")
        object.__setattr__(self, "cells", cells.astype(np.int8))


@dataclass(frozen=True)
class ProbabilisticGraph:
    """Fixed vertex set with per-ordered-pair edge probabilities.

    ``probs`` maps ordered pairs (i, j), i != j, to probabilities in [0, 1].
    Pairs absent from the map have probability zero. For an undirected
    graph the map is symmetric and both orientations are stored. Instances
    are treated as immutable after construction.
    """

    n: int
    directed: bool
    probs: dict[tuple[int, int], float]
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        if self.n < 1:
            raise ValidationError(f"vertex count must be >= 1, got {self.n}")
        if self.labels is not None and len(self.labels) != self.n:
            raise ValidationError(
                f"expected {self.n} labels, got {len(self.labels)}"
            )
        clean: dict[tuple[int, int], float] = {}
        for (i, j), p in self.probs.items():
            if i == j:
                raise ValidationError(f"self-loop ({i}, {j}) is not allowed")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValidationError(f"pair ({i}, {j}) outside 0..{self.n - 1}")
            if not 0.0 <= p <= 1.0:
                raise ValidationError(f"probability {p} for ({i}, {j}) outside [0, 1]")
            if p > 0.0:
                clean[(i, j)] = float(p)
        if not self.directed:
            for (i, j), p in clean.items():
                q = clean.get((j, i))
                if q is None:
                    raise ValidationError(
                        f"undirected graph missing mirror of pair ({i}, {j})"
                    )
                if q != p:
                    raise ValidationError(
                        f"undirected graph has asymmetric probabilities on ({i}, {j})"
                    )
        object.__setattr__(self, "probs", clean)

    def probability(self, i: int, j: int) -> float:
        return self.probs.get((i, j), 0.0)

    def probability_matrix(self) -> np.ndarray:
        """Dense n x n matrix of edge probabilities (diagonal zero)."""
        mat = np.zeros((self.n, self.n))
        for (i, j), p in self.probs.items():
            mat[i, j] = p
        return mat

    def mean_probability(self) -> float:
        """Mean probability over all potential edges (directed: ordered
        pairs; undirected: unordered pairs)."""
        total = sum(self.probs.values())
        pairs = self.n * (self.n - 1)
        if not self.directed:
            total /= 2.0
            pairs //= 2
        return total / pairs


@dataclass(frozen=True)
class GraphRealization:
    """One sampled graph: a set of ordered-pair edges on 0..n-1."""

    index: int
    n: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        for i, j in self.edges:
            if i == j:
                raise ValidationError(f"self-loop ({i}, {j}) in realization")
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise ValidationError(f"edge ({i}, {j}) outside 0..{self.n - 1}")

    def undirected_pairs(self) -> frozenset[tuple[int, int]]:
        """Unordered pairs touched by at least one orientation."""
        return frozenset((i, j) if i < j else (j, i) for i, j in self.edges)

    def mutual_pairs(self) -> frozenset[tuple[int, int]]:
        """Unordered pairs sampled in both orientations."""
        return frozenset(
            (i, j) for i, j in self.edges if i < j and (j, i) in self.edges
        )


@dataclass(frozen=True)
class RealizationSequence:
    """N realizations sampled from one graph, with seed provenance.

    The sequence is a pure function of (graph, N, seed); ``view_mode``
    records how downstream structural computations should read the
    ordered-pair edges.
    """

    graph: ProbabilisticGraph
    realizations: tuple[GraphRealization, ...]
    seed: int
    view_mode: str = "undirected-union"

    def __post_init__(self):
        if len(self.realizations) < 1:
            raise ValidationError("sequence must contain at least one realization")
        if self.view_mode not in VIEW_MODES:
            raise ValidationError(f"unknown view mode {self.view_mode!r}")

    def __len__(self) -> int:
        return len(self.realizations)


def ingest_css(tensor: CssTensor) -> ProbabilisticGraph:
    """Average perceiver reports into edge probabilities.

    Every perceiver carries equal weight: p(i, j) is the fraction of
    perceivers reporting the ordered pair (i, j). The result is directed.
    """
    n = tensor.n
    means = tensor.cells.mean(axis=0)
    probs = {
        (i, j): float(means[i, j])
        for i in range(n)
        for j in range(n)
        if i != j and means[i, j] > 0
    }
    return ProbabilisticGraph(n=n, directed=True, probs=probs)


def consensus_threshold(tensor: CssTensor, threshold: float) -> GraphRealization:
    """Deterministic consensus graph: keep (i, j) iff the fraction of
    perceivers reporting it is >= threshold."""
    if not 0.0 <= threshold <= 1.0:
        raise ValidationError(f"threshold {threshold} outside [0, 1]")
    n = tensor.n
    means = tensor.cells.mean(axis=0)
    edges = frozenset(
        (i, j)
        for i in range(n)
        for j in range(n)
        if i != j and means[i, j] >= threshold
    )
    return GraphRealization(index=0, n=n, edges=edges)


_GRAPH_KEYS = {"n", "directed", "labels", "edges"}
_EDGE_KEYS = {"i", "j", "p"}


def parse_graph(text: str) -> ProbabilisticGraph:
    """Parse the edge-probability JSON schema into a validated graph.

    Schema: ``{"n": int, "directed": bool, "labels": [str]?, "edges":
    [{"i": int, "j": int, "p": float}]}``. For an undirected graph each
    unordered pair appears once; listing both orientations is a duplicate.
    Unknown fields are rejected. Zero-probability records are dropped.
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    unknown = set(data) - _GRAPH_KEYS
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    for key in ("n", "directed", "edges"):
        if key not in data:
            raise ParseError(f"missing required field {key!r}")
    n, directed, edges = data["n"], data["directed"], data["edges"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"'n' must be a positive integer, got {n!r}")
    if not isinstance(directed, bool):
        raise ParseError(f"'directed' must be a boolean, got {directed!r}")
    labels = data.get("labels")
    if labels is not None:
        if not isinstance(labels, list) or not all(isinstance(s, str) for s in labels):
            raise ParseError("'labels' must be a list of strings")
        if len(labels) != n:
            raise ParseError(f"expected {n} labels, got {len(labels)}")
        labels = tuple(labels)
    if not isinstance(edges, list):
        raise ParseError("'edges' must be a list")

    probs: dict[tuple[int, int], float] = {}
    seen: set[tuple[int, int]] = set()
    for record in edges:
        if not isinstance(record, dict) or set(record) != _EDGE_KEYS:
            raise ParseError(f"edge record must have exactly keys i, j, p: {record!r}")
        i, j, p = record["i"], record["j"], record["p"]
        if not isinstance(i, int) or not isinstance(j, int) or isinstance(i, bool) or isinstance(j, bool):
            raise ParseError(f"vertex ids must be integers: {record!r}")
        if isinstance(p, bool) or not isinstance(p, (int, float)):
            raise ParseError(f"probability must be a number: {record!r}")
        if i == j:
            raise ParseError(f"self-loop rejected: {record!r}")
        if not (0 <= i < n and 0 <= j < n):
            raise ParseError(f"vertex id outside 0..{n - 1}: {record!r}")
        if not 0.0 <= p <= 1.0:
            raise ParseError(f"probability outside [0, 1]: {record!r}")
        key = (i, j) if directed else (min(i, j), max(i, j))
        if key in seen:
            raise ParseError(f"duplicate pair: {record!r}")
        seen.add(key)
        probs[(i, j)] = float(p)
        if not directed:
            probs[(j, i)] = float(p)
    return ProbabilisticGraph(n=n, directed=directed, probs=probs, labels=labels)


_CSS_KEYS = {"relation", "n", "perceivers"}


def parse_css(text: str) -> CssTensor:
    """Parse CSS JSON ``{"relation": str, "n": int, "perceivers": [[[0|1]]]}``
    (k-major nesting: perceiver, then sender, then receiver)."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ParseError("top-level value must be an object")
    unknown = set(data) - _CSS_KEYS
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    for key in _CSS_KEYS:
        if key not in data:
            raise ParseError(f"missing required field {key!r}")
    relation, n, perceivers = data["relation"], data["n"], data["perceivers"]
    if not isinstance(relation, str):
        raise ParseError("'relation' must be a string")
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ParseError(f"'n' must be a positive integer, got {n!r}")
    try:
        cells = np.asarray(perceivers)
    except ValueError as exc:
        raise ParseError(f"'perceivers' is not a rectangular array: {exc}") from exc
    if cells.shape != (n, n, n):
        raise ParseError(f"'perceivers' must have shape {(n,) * 3}, got {cells.shape}")
    if not np.isin(cells, (0, 1)).all():
        raise ParseError("'perceivers' cells must all be 0 or 1")
    return CssTensor(relation_name=relation, n=n, cells=cells)


def sample_realizations(
    graph: ProbabilisticGraph,
    count: int,
    seed: int,
    view_mode: str = "undirected-union",
) -> RealizationSequence:
    """Sample ``count`` independent realizations of ``graph``.

    Each ordered pair is an independent Bernoulli draw with its edge
    probability; for an undirected graph each unordered pair is drawn once
    and emitted in both orientations. Realization k consumes a substream
    keyed by (seed, k), so identical (graph, count, seed) reproduce the
    sequence bit-for-bit regardless of evaluation order, and the first M
    realizations of a longer run equal the length-M run.
    """
    if count < 1:
        raise ValidationError(f"count must be >= 1, got {count}")
    if view_mode not in VIEW_MODES:
        raise ValidationError(f"unknown view mode {view_mode!r}")
    n = graph.n
    pmat = graph.probability_matrix()
    realizations = []
    for idx in range(count):
        rng = np.random.default_rng(np.random.SeedSequence(entropy=seed, spawn_key=(idx,)))
        draws = rng.random((n, n))
        if not graph.directed:
            upper = np.triu(draws, k=1)
            draws = upper + upper.T
        hits = draws < pmat
        np.fill_diagonal(hits, False)
        rows, cols = np.nonzero(hits)
        edges = frozenset(zip(rows.tolist(), cols.tolist()))
        realizations.append(GraphRealization(index=idx, n=n, edges=edges))
    return RealizationSequence(
        graph=graph, realizations=tuple(realizations), seed=seed, view_mode=view_mode
    )


def apply_view(realization: GraphRealization, mode: str) -> GraphRealization:
    """Convert sampled ordered-pair edges into the structure used downstream.

    directed: identity. undirected-union: both orientations present iff
    either was sampled. undirected-mutual: both present iff both were.
    """
    if mode not in VIEW_MODES:
        raise ValidationError(f"unknown view mode {mode!r}")
    if mode == "directed":
        return realization
    if mode == "undirected-union":
        pairs = realization.undirected_pairs()
    else:
        pairs = realization.mutual_pairs()
    edges = frozenset((i, j) for i, j in pairs) | frozenset((j, i) for i, j in pairs)
    return GraphRealization(index=realization.index, n=realization.n, edges=edges)
