"""Distribution discretization and scoring.

Distributions of network statistics are discretized into 20 equal-weight
balls on a binned axis (a quantile dotplot). Two such ball distributions
are compared with Earth Mover's Distance: with equal unit weights on a
1-D axis the optimal transport pairs balls in sorted order, so the score
is the mean absolute difference of sorted positions. Sampling error of
the Monte-Carlo pipeline is quantified by re-drawing sets of realizations
and scoring each against a baseline set.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import ParseError, ValidationError
from .model import ProbabilisticGraph, sample_realizations
from .stats import StatSpec, StatDistribution, distribution

BALL_COUNT = 20


@dataclass(frozen=True)
class BallDistribution:
    """Exactly 20 unit-weight balls at bin centers (bins anchored at 0)."""

    positions: tuple[float, ...]
    bin_width: float

    def __post_init__(self):
        if len(self.positions) != BALL_COUNT:
            raise ValidationError(
                f"expected {BALL_COUNT} balls, got {len(self.positions)}"
            )
        if self.bin_width <= 0:
            raise ValidationError(f"bin width must be positive, got {self.bin_width}")
        if any(b < a for a, b in zip(self.positions, self.positions[1:])):
            raise ValidationError("ball positions must be sorted non-decreasing")
        for pos in self.positions:
            offset = pos / self.bin_width - 0.5
            if abs(offset - round(offset)) > 1e-6:
                raise ValidationError(
                    f"position {pos} is not a bin center for width {self.bin_width}"
                )

    def to_dict(self) -> dict:
        return {"bin_width": self.bin_width, "positions": list(self.positions)}

    @classmethod
    def from_json(cls, text: str) -> "BallDistribution":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(data, dict) or set(data) != {"bin_width", "positions"}:
            raise ParseError("expected exactly the fields 'bin_width' and 'positions'")
        width, positions = data["bin_width"], data["positions"]
        if isinstance(width, bool) or not isinstance(width, (int, float)):
            raise ParseError("'bin_width' must be a number")
        if not isinstance(positions, list) or not all(
            isinstance(p, (int, float)) and not isinstance(p, bool) for p in positions
        ):
            raise ParseError("'positions' must be a list of numbers")
        return cls(positions=tuple(float(p) for p in positions), bin_width=float(width))


@dataclass(frozen=True)
class EmdReport:
    """Average per-ball transport distance plus the sorted-order matching."""

    score: float
    flow: tuple[tuple[int, int], ...]


@dataclass(frozen=True)
class SamplingErrorReport:
    mean_emd: float
    ci_low: float
    ci_high: float
    resamples: int
    set_size: int
    bin_width: float


def default_bin_width(values) -> float:
    """Span-based default, (max - min) / 20; 1.0 for constant input."""
    values = list(values)
    if not values:
        raise ValidationError("cannot derive a bin width from no values")
    span = max(values) - min(values)
    return span / BALL_COUNT if span > 0 else 1.0


def qdp(dist: StatDistribution, bin_width: float | None = None) -> BallDistribution:
    """Discretize a distribution as a 20-ball quantile dotplot.

    Takes quantiles at probabilities (k - 0.5)/20 by linear interpolation
    between the half-offset plotting positions (r - 0.5)/n of the sorted
    sample, then snaps each quantile to the center of its containing bin.
    """
    values = np.asarray(dist.values, dtype=float)
    if values.size == 0:
        raise ValidationError(f"no numeric values to discretize for {dist.statistic!r}")
    if bin_width is None:
        bin_width = default_bin_width(values)
    if bin_width <= 0:
        raise ValidationError(f"bin width must be positive, got {bin_width}")
    ordered = np.sort(values)
    plotting = (np.arange(ordered.size) + 0.5) / ordered.size
    targets = (np.arange(BALL_COUNT) + 0.5) / BALL_COUNT
    quantiles = np.interp(targets, plotting, ordered)
    # 1e-9 absorbs float error on values that sit exactly on a bin edge
    bins = np.floor(quantiles / bin_width + 1e-9)
    centers = (bins + 0.5) * bin_width
    return BallDistribution(positions=tuple(float(c) for c in centers), bin_width=float(bin_width))


def emd(user: BallDistribution, truth: BallDistribution) -> EmdReport:
    """Earth Mover's Distance between two 20-ball distributions.

    Equal unit weights in one dimension make the sorted pairwise matching
    optimal; the score is the mean |u_(k) - t_(k)| over sorted order.
    """
    if len(user.positions) != len(truth.positions):
        raise ValidationError(
            f"ball counts differ: {len(user.positions)} vs {len(truth.positions)}"
        )
    u = np.sort(np.asarray(user.positions, dtype=float))
    t = np.sort(np.asarray(truth.positions, dtype=float))
    score = float(np.abs(u - t).sum() / len(u))
    flow = tuple((k, k) for k in range(len(u)))
    return EmdReport(score=score, flow=flow)


def _child_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence(entropy=seed, spawn_key=(index,)).generate_state(1)[0])


def sampling_error(
    graph: ProbabilisticGraph,
    spec: StatSpec,
    resamples: int = 500,
    set_size: int = 150,
    bin_width: float | None = None,
    seed: int = 0,
    view_mode: str = "undirected-union",
) -> SamplingErrorReport:
    """Monte-Carlo sampling error of a statistic's distribution, in EMD.

    Draws a baseline set of ``set_size`` realizations, then ``resamples``
    fresh sets; each set's quantile dotplot is scored against the
    baseline's (shared bin lattice). Returns the mean EMD and a
    percentile-bootstrap 95% CI of the mean. Deterministic under ``seed``.
    """
    if resamples < 2:
        raise ValidationError(f"resamples must be >= 2, got {resamples}")
    if set_size < 1:
        raise ValidationError(f"set size must be >= 1, got {set_size}")
    baseline_seq = sample_realizations(graph, set_size, _child_seed(seed, 0), view_mode)
    baseline_dist = distribution(baseline_seq, spec)
    if bin_width is None:
        bin_width = default_bin_width(baseline_dist.values)
    baseline = qdp(baseline_dist, bin_width)
    scores = np.empty(resamples)
    for r in range(resamples):
        seq = sample_realizations(graph, set_size, _child_seed(seed, r + 1), view_mode)
        scores[r] = emd(qdp(distribution(seq, spec), bin_width), baseline).score
    rng = np.random.default_rng(
        np.random.SeedSequence(entropy=seed, spawn_key=(resamples + 1,))
    )
    boot = rng.choice(scores, size=(1000, resamples), replace=True).mean(axis=1)
    low, high = np.percentile(boot, [2.5, 97.5])
    return SamplingErrorReport(
        mean_emd=float(scores.mean()),
        ci_low=float(low),
        ci_high=float(high),
        resamples=resamples,
        set_size=set_size,
        bin_width=float(bin_width),
    )
