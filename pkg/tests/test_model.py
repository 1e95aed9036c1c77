import json

import numpy as np
import pytest

from netreel.errors import ParseError, ValidationError
from netreel.model import (
    CssTensor,
    GraphRealization,
    ProbabilisticGraph,
    apply_view,
    consensus_threshold,
    ingest_css,
    parse_css,
    parse_graph,
    sample_realizations,
)


def seeded_tensor(n=5, seed=11):
    rng = np.random.default_rng(seed)
    cells = (rng.random((n, n, n)) < 0.5).astype(int)
    for k in range(n):
        np.fill_diagonal(cells[k], 0)
    return CssTensor(relation_name="toy", n=n, cells=cells)


class TestIngestCss:
    def test_demo_dimensions(self):
        from netreel.demo import demo_css, demo_graph

        assert demo_css().n == 21
        assert demo_graph().n == 21

    def test_unanimous_pair(self):
        cells = np.zeros((3, 3, 3), dtype=int)
        cells[:, 0, 1] = 1
        graph = ingest_css(CssTensor(relation_name="r", n=3, cells=cells))
        assert graph.probability(0, 1) == 1.0

    def test_matches_brute_force_count(self):
        tensor = seeded_tensor()
        graph = ingest_css(tensor)
        for i in range(5):
            for j in range(5):
                if i == j:
                    continue
                count = sum(int(tensor.cells[k, i, j]) for k in range(5))
                assert graph.probability(i, j) == pytest.approx(count / 5)

    def test_probabilities_in_unit_interval(self):
        graph = ingest_css(seeded_tensor(seed=3))
        assert all(0.0 <= p <= 1.0 for p in graph.probs.values())

    def test_symmetric_tensor_gives_symmetric_probs(self):
        cells = seeded_tensor(seed=5).cells
        sym = ((cells + cells.transpose(0, 2, 1)) > 0).astype(int)
        graph = ingest_css(CssTensor(relation_name="s", n=5, cells=sym))
        for (i, j), p in graph.probs.items():
            assert graph.probability(j, i) == p

    def test_non_cube_rejected(self):
        with pytest.raises(ParseError):
            CssTensor(relation_name="bad", n=3, cells=np.zeros((3, 3, 2), dtype=int))

    def test_non_binary_rejected(self):
        cells = np.zeros((3, 3, 3), dtype=int)
        cells[0, 0, 1] = 2
        with pytest.raises(ParseError):
            CssTensor(relation_name="bad", n=3, cells=cells)


class TestConsensusThreshold:
    def test_zero_threshold_gives_full_graph(self):
        tensor = seeded_tensor()
        result = consensus_threshold(tensor, 0.0)
        assert len(result.edges) == 5 * 4

    def test_unit_threshold_keeps_unanimous_only(self):
        cells = np.zeros((3, 3, 3), dtype=int)
        cells[:, 0, 1] = 1
        cells[0, 1, 2] = 1
        result = consensus_threshold(CssTensor(relation_name="r", n=3, cells=cells), 1.0)
        assert result.edges == {(0, 1)}

    def test_majority_matches_vote_enumeration(self):
        tensor = seeded_tensor(seed=29)
        result = consensus_threshold(tensor, 0.5)
        expected = set()
        for i in range(5):
            for j in range(5):
                if i != j and sum(tensor.cells[k, i, j] for k in range(5)) >= 2.5:
                    expected.add((i, j))
        assert result.edges == expected

    def test_out_of_range_threshold(self):
        with pytest.raises(ValidationError):
            consensus_threshold(seeded_tensor(), 1.5)


class TestParseGraph:
    def test_minimal(self):
        graph = parse_graph('{"n": 2, "directed": true, "edges": [{"i": 0, "j": 1, "p": 0.5}]}')
        assert graph.n == 2
        assert graph.probability(0, 1) == 0.5
        assert graph.probability(1, 0) == 0.0

    def test_probability_out_of_range(self):
        with pytest.raises(ParseError, match="1.2"):
            parse_graph('{"n": 2, "directed": true, "edges": [{"i": 0, "j": 1, "p": 1.2}]}')

    def test_self_loop(self):
        with pytest.raises(ParseError, match="self-loop"):
            parse_graph('{"n": 2, "directed": true, "edges": [{"i": 1, "j": 1, "p": 0.5}]}')

    def test_duplicate_pair(self):
        text = json.dumps(
            {"n": 2, "directed": True,
             "edges": [{"i": 0, "j": 1, "p": 0.5}, {"i": 0, "j": 1, "p": 0.25}]}
        )
        with pytest.raises(ParseError, match="duplicate"):
            parse_graph(text)

    def test_undirected_mirror_is_duplicate(self):
        text = json.dumps(
            {"n": 2, "directed": False,
             "edges": [{"i": 0, "j": 1, "p": 0.5}, {"i": 1, "j": 0, "p": 0.5}]}
        )
        with pytest.raises(ParseError, match="duplicate"):
            parse_graph(text)

    def test_bad_json(self):
        with pytest.raises(ParseError, match="JSON"):
            parse_graph("{not json")

    def test_unknown_field_rejected(self):
        with pytest.raises(ParseError, match="unknown"):
            parse_graph('{"n": 2, "directed": true, "edges": [], "extra": 1}')

    def test_labels_roundtrip(self):
        graph = parse_graph(
            '{"n": 2, "directed": false, "labels": ["a", "b"],'
            ' "edges": [{"i": 0, "j": 1, "p": 0.5}]}'
        )
        assert graph.labels == ("a", "b")
        assert graph.probability(1, 0) == 0.5


class TestParseCss:
    def test_roundtrip(self):
        tensor = seeded_tensor()
        text = json.dumps(
            {"relation": "toy", "n": 5, "perceivers": tensor.cells.tolist()}
        )
        parsed = parse_css(text)
        assert parsed.relation_name == "toy"
        assert (parsed.cells == tensor.cells).all()

    def test_wrong_shape(self):
        with pytest.raises(ParseError, match="shape"):
            parse_css('{"relation": "x", "n": 2, "perceivers": [[[0, 1]]]}')

    def test_unknown_field(self):
        with pytest.raises(ParseError, match="unknown"):
            parse_css('{"relation": "x", "n": 1, "perceivers": [[[0]]], "y": 2}')


def two_edge_graph(p01=0.5, p12=0.5):
    return ProbabilisticGraph(
        n=3, directed=True, probs={(0, 1): p01, (1, 2): p12}
    )


class TestSampling:
    def test_certain_edge_always_present(self):
        seq = sample_realizations(two_edge_graph(p01=1.0), 50, seed=1)
        assert all((0, 1) in r.edges for r in seq.realizations)

    def test_impossible_edge_never_present(self):
        seq = sample_realizations(two_edge_graph(p01=0.0), 50, seed=1)
        assert all((0, 1) not in r.edges for r in seq.realizations)

    def test_empirical_frequency_within_binomial_bound(self):
        seq = sample_realizations(two_edge_graph(p01=0.5), 150, seed=42)
        freq = sum((0, 1) in r.edges for r in seq.realizations) / 150
        assert abs(freq - 0.5) <= 3 * np.sqrt(0.25 / 150)

    def test_determinism(self):
        a = sample_realizations(two_edge_graph(), 20, seed=9)
        b = sample_realizations(two_edge_graph(), 20, seed=9)
        assert [r.edges for r in a.realizations] == [r.edges for r in b.realizations]

    def test_prefix_stability(self):
        short = sample_realizations(two_edge_graph(), 5, seed=9)
        long = sample_realizations(two_edge_graph(), 30, seed=9)
        assert [r.edges for r in short.realizations] == [
            r.edges for r in long.realizations[:5]
        ]

    def test_aggregate_frequency_consistency(self):
        # demo model, N=150: tolerate the expected ~0.3% of pairs outside
        # the 3-sigma band, requiring the aggregate violation rate < 1%
        from netreel.demo import demo_graph

        graph = demo_graph()
        seq = sample_realizations(graph, 150, seed=5)
        pairs = [(i, j) for i in range(graph.n) for j in range(graph.n) if i != j]
        violations = 0
        for i, j in pairs:
            p = graph.probability(i, j)
            freq = sum((i, j) in r.edges for r in seq.realizations) / 150
            if abs(freq - p) > 3 * np.sqrt(p * (1 - p) / 150):
                violations += 1
        assert violations / len(pairs) < 0.01

    def test_undirected_graph_samples_symmetric_edges(self):
        graph = ProbabilisticGraph(
            n=3, directed=False, probs={(0, 1): 0.5, (1, 0): 0.5}
        )
        seq = sample_realizations(graph, 100, seed=3)
        for r in seq.realizations:
            assert ((0, 1) in r.edges) == ((1, 0) in r.edges)

    def test_count_must_be_positive(self):
        with pytest.raises(ValidationError):
            sample_realizations(two_edge_graph(), 0, seed=1)


class TestApplyView:
    def realization(self, edges):
        return GraphRealization(index=0, n=3, edges=frozenset(edges))

    def test_union_symmetrizes(self):
        viewed = apply_view(self.realization({(0, 1)}), "undirected-union")
        assert viewed.edges == {(0, 1), (1, 0)}

    def test_mutual_drops_unreciprocated(self):
        viewed = apply_view(self.realization({(0, 1)}), "undirected-mutual")
        assert viewed.edges == frozenset()

    def test_mutual_keeps_reciprocated(self):
        viewed = apply_view(
            self.realization({(0, 1), (1, 0), (1, 2)}), "undirected-mutual"
        )
        assert viewed.edges == {(0, 1), (1, 0)}

    def test_directed_identity(self):
        r = self.realization({(0, 1), (2, 1)})
        assert apply_view(r, "directed").edges == r.edges


class TestProbabilisticGraph:
    def test_self_loop_rejected(self):
        with pytest.raises(ValidationError):
            ProbabilisticGraph(n=2, directed=True, probs={(0, 0): 0.5})

    def test_asymmetric_undirected_rejected(self):
        with pytest.raises(ValidationError):
            ProbabilisticGraph(
                n=2, directed=False, probs={(0, 1): 0.5, (1, 0): 0.4}
            )

    def test_probability_out_of_range_rejected(self):
        with pytest.raises(ValidationError):
            ProbabilisticGraph(n=2, directed=True, probs={(0, 1): -0.1})
