import numpy as np
import pytest

from netreel.community import ColorAssignment, CommunityAssignment, detect_communities
from netreel.errors import ValidationError
from netreel.model import (
    GraphRealization,
    ProbabilisticGraph,
    apply_view,
    sample_realizations,
)
from netreel.stats import (
    StatSpec,
    community_count,
    density,
    distribution,
    edge_occurrence,
    isolates,
    node_stability,
    shortest_path,
)
from oracles import floyd_warshall


def undirected(n, pairs):
    edges = {(i, j) for i, j in pairs} | {(j, i) for i, j in pairs}
    return GraphRealization(index=0, n=n, edges=frozenset(edges))


def complete_directed(n):
    return GraphRealization(
        index=0, n=n,
        edges=frozenset((i, j) for i in range(n) for j in range(n) if i != j),
    )


class TestDensity:
    def test_complete_directed(self):
        assert density(complete_directed(4), "directed") == 1.0

    def test_empty(self):
        assert density(GraphRealization(0, 4, frozenset()), "directed") == 0.0
        assert density(GraphRealization(0, 4, frozenset()), "undirected-union") == 0.0

    def test_matches_hand_count(self):
        r = undirected(5, [(0, 1), (1, 2), (3, 4)])
        assert density(r, "undirected-union") == pytest.approx(3 / 10)
        assert density(r, "directed") == pytest.approx(6 / 20)

    def test_mutual_view_counts_reciprocated_only(self):
        r = GraphRealization(0, 3, frozenset({(0, 1), (1, 0), (1, 2)}))
        assert density(r, "undirected-mutual") == pytest.approx(1 / 3)


class TestIsolates:
    def test_empty_graph_all_isolated(self):
        assert isolates(GraphRealization(0, 5, frozenset()), "undirected-union") == 5

    def test_complete_graph_none(self):
        assert isolates(complete_directed(4), "directed") == 0

    def test_matches_degree_scan(self):
        rng = np.random.default_rng(17)
        pairs = [(i, j) for i in range(10) for j in range(i + 1, 10) if rng.random() < 0.15]
        r = undirected(10, pairs)
        viewed = apply_view(r, "undirected-union")
        degree = [0] * 10
        for i, j in viewed.undirected_pairs():
            degree[i] += 1
            degree[j] += 1
        assert isolates(r, "undirected-union") == sum(1 for d in degree if d == 0)

    def test_mutual_view_can_create_isolates(self):
        r = GraphRealization(0, 3, frozenset({(0, 1), (1, 0), (1, 2)}))
        assert isolates(r, "undirected-mutual") == 1


class TestShortestPath:
    def test_adjacent_pair(self):
        assert shortest_path(undirected(3, [(0, 1)]), 0, 1, "undirected-union") == 1

    def test_disconnected_pair_tagged(self):
        assert shortest_path(undirected(4, [(0, 1)]), 0, 3, "undirected-union") is None

    def test_matches_floyd_warshall(self):
        rng = np.random.default_rng(19)
        pairs = [(i, j) for i in range(12) for j in range(i + 1, 12) if rng.random() < 0.2]
        r = undirected(12, pairs)
        oracle = floyd_warshall(12, pairs)
        for s in range(12):
            for t in range(12):
                if s == t:
                    continue
                hops = shortest_path(r, s, t, "undirected-union")
                if np.isinf(oracle[s, t]):
                    assert hops is None
                else:
                    assert hops == oracle[s, t]

    def test_symmetric_in_undirected_views(self):
        rng = np.random.default_rng(20)
        pairs = [(i, j) for i in range(8) for j in range(i + 1, 8) if rng.random() < 0.25]
        r = undirected(8, pairs)
        for s in range(8):
            for t in range(s + 1, 8):
                assert shortest_path(r, s, t, "undirected-union") == shortest_path(
                    r, t, s, "undirected-union"
                )

    def test_directed_one_way(self):
        r = GraphRealization(0, 2, frozenset({(0, 1)}))
        assert shortest_path(r, 0, 1, "directed") == 1
        assert shortest_path(r, 1, 0, "directed") is None

    def test_same_endpoints_rejected(self):
        with pytest.raises(ValidationError):
            shortest_path(undirected(3, []), 1, 1, "undirected-union")

    def test_invalid_vertex_rejected(self):
        with pytest.raises(ValidationError):
            shortest_path(undirected(3, []), 0, 7, "undirected-union")


class TestCommunityCount:
    def test_singletons(self):
        assert community_count(CommunityAssignment(0, (0, 1, 2, 3))) == 4

    def test_single_label(self):
        assert community_count(CommunityAssignment(0, (0, 0, 0))) == 1

    def test_planted_two_block(self):
        r = undirected(8, [(i, j) for i in range(4) for j in range(i + 1, 4)]
                       + [(i, j) for i in range(4, 8) for j in range(i + 1, 8)])
        assert community_count(detect_communities(r)) == 2


class TestEdgeOccurrence:
    def graph(self, p):
        return ProbabilisticGraph(n=3, directed=True, probs={(0, 1): p} if p else {})

    def test_certain_edge(self):
        seq = sample_realizations(self.graph(1.0), 40, seed=1, view_mode="directed")
        assert edge_occurrence(seq, 0, 1) == 1.0

    def test_impossible_edge(self):
        seq = sample_realizations(self.graph(0.0), 40, seed=1, view_mode="directed")
        assert edge_occurrence(seq, 0, 1) == 0.0

    def test_matches_direct_count(self):
        seq = sample_realizations(self.graph(0.3), 150, seed=23, view_mode="directed")
        count = sum((0, 1) in r.edges for r in seq.realizations)
        assert edge_occurrence(seq, 0, 1) == count / 150

    def test_union_view_counts_either_direction(self):
        graph = ProbabilisticGraph(n=2, directed=True, probs={(1, 0): 1.0})
        seq = sample_realizations(graph, 10, seed=2, view_mode="undirected-union")
        assert edge_occurrence(seq, 0, 1) == 1.0


class TestNodeStability:
    def test_constant_color(self):
        colors = ColorAssignment(palette=(0,), colors=((0, 1), (0, 1), (0, 2)))
        assert node_stability(colors, 0) == 1.0

    def test_even_alternation_is_half(self):
        colors = ColorAssignment(palette=(0, 1), colors=((0, 0), (1, 0), (0, 0), (1, 0)))
        assert node_stability(colors, 0) == 0.5

    def test_matches_direct_frequency(self):
        rng = np.random.default_rng(29)
        frames = tuple(tuple(int(c) for c in rng.integers(0, 3, size=4)) for _ in range(30))
        colors = ColorAssignment(palette=(0, 1, 2), colors=frames)
        for v in range(4):
            series = [f[v] for f in frames]
            top = max(series.count(c) for c in set(series))
            assert node_stability(colors, v) == top / 30


class TestDistribution:
    def sequence(self, n_frames=150, view="directed"):
        probs = {(0, 1): 0.5, (1, 2): 0.8, (2, 0): 0.1, (0, 3): 0.4}
        graph = ProbabilisticGraph(n=4, directed=True, probs=probs)
        return graph, sample_realizations(graph, n_frames, seed=31, view_mode=view)

    def test_density_has_one_value_per_frame(self):
        _, seq = self.sequence()
        dist = distribution(seq, StatSpec("density"))
        assert len(dist.values) == 150
        assert dist.n_samples == 150

    def test_constant_model_constant_distribution(self):
        graph = ProbabilisticGraph(n=3, directed=True, probs={(0, 1): 1.0})
        seq = sample_realizations(graph, 20, seed=1, view_mode="directed")
        dist = distribution(seq, StatSpec("density"))
        assert set(dist.values) == {1 / 6}

    def test_mean_density_tracks_mean_probability(self):
        graph, seq = self.sequence()
        dist = distribution(seq, StatSpec("density"))
        mean_p = graph.mean_probability()
        # variance of per-frame density under independent edges
        pair_var = sum(p * (1 - p) for p in graph.probs.values())
        se = np.sqrt(pair_var / (12**2) / 150)
        assert abs(np.mean(dist.values) - mean_p) < 3 * se

    def test_unreachable_accounting(self):
        _, seq = self.sequence(view="undirected-union")
        dist = distribution(seq, StatSpec("shortest-path", source=3, target=2))
        assert len(dist.values) + dist.unreachable_count == 150
        assert dist.unreachable_count > 0

    def test_unknown_statistic_rejected(self):
        with pytest.raises(ValidationError):
            StatSpec("clustering")

    def test_shortest_path_needs_endpoints(self):
        with pytest.raises(ValidationError):
            StatSpec("shortest-path")
        with pytest.raises(ValidationError):
            StatSpec("shortest-path", source=1, target=1)
