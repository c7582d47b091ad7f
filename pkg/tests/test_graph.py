from fractions import Fraction

import networkx as nx
import pytest
from hypothesis import given

from orcurv.errors import (
    DegreeError,
    DuplicateEdgeError,
    EdgeListParseError,
    IsolatedVertexError,
    LoopError,
    NonPositiveWeightError,
)
from orcurv.families import complete, cycle, path, random_tree, star
from orcurv.graph import (
    Graph,
    ball,
    clustering_coefficient,
    common_neighbors,
    connected_components,
    degree_summary,
    diameter,
    hop_distance,
    label_key,
    load_edge_list,
    serialize_edge_list,
    sphere,
    triangle_count,
)

from .conftest import small_graphs


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.vertex_count))
    h.add_edges_from(g.edges())
    return h


class TestLoadEdgeList:
    def test_simple_path(self):
        g = load_edge_list("a b\nb c")
        assert g.vertex_count == 3 and g.edge_count == 2
        assert all(g.weight(u, v) == 1 for u, v in g.edges())

    def test_duplicate_edge_rejected(self):
        with pytest.raises(DuplicateEdgeError) as exc:
            load_edge_list("a b 1/3\nb a 1/3", weighted=True)
        assert exc.value.line_no == 2

    def test_loop_rejected(self):
        with pytest.raises(LoopError):
            load_edge_list("x x")

    @pytest.mark.parametrize("w", ["0", "-1", "-2/3"])
    def test_nonpositive_weight(self, w):
        with pytest.raises(NonPositiveWeightError):
            load_edge_list(f"a b {w}", weighted=True)

    @pytest.mark.parametrize("text", ["a b c", "a b 1/0", "a b nan", "a b 1e400x"])
    def test_malformed_lines(self, text):
        with pytest.raises(EdgeListParseError):
            load_edge_list(text, weighted="c" not in text)

    def test_weight_column_requires_weighted_mode(self):
        with pytest.raises(EdgeListParseError):
            load_edge_list("a b 2")

    def test_comments_blank_lines_and_bytes(self):
        g = load_edge_list(b"# header\n\na b 2  # heavy\nb c 0.5\n", weighted=True)
        assert g.weight(g.index("a"), g.index("b")) == 2
        assert g.weight(g.index("b"), g.index("c")) == Fraction(1, 2)

    def test_isolated_vertex_declaration(self):
        g = load_edge_list("a b\nz\n")
        assert g.vertex_count == 3 and g.neighbors(g.index("z")) == []

    @given(small_graphs(max_n=7, connected=False, weighted=True))
    def test_round_trip(self, g):
        again = load_edge_list(serialize_edge_list(g), weighted=True)
        assert again == g


class TestMetric:
    def test_path_distance(self):
        g = load_edge_list("a b\nb c")
        assert hop_distance(g, g.index("a"), g.index("c")) == 2
        assert hop_distance(g, 0, 0) == 0

    def test_complete_graph_distance(self):
        g = complete(5)
        assert {hop_distance(g, x, y) for x in range(5) for y in range(5) if x != y} == {1}

    def test_unreachable_and_cap(self):
        g = load_edge_list("a b\nc d\n")
        assert hop_distance(g, 0, 2) is None
        assert hop_distance(path(6), 0, 5, cap=3) is None

    def test_balls(self):
        assert ball(star(4), 0, 0) == {0}
        assert ball(star(4), 0, 1) == set(range(5))
        assert len(ball(cycle(6), 0, 2)) == 5
        assert sorted(sphere(cycle(6), 0, 3)) == [3]

    @given(small_graphs(max_n=8, connected=False))
    def test_distances_match_networkx(self, g):
        ref = dict(nx.all_pairs_shortest_path_length(to_nx(g)))
        for x in range(g.vertex_count):
            for y in range(g.vertex_count):
                assert hop_distance(g, x, y) == ref[x].get(y)

    @given(small_graphs(max_n=8))
    def test_diameter_matches_networkx(self, g):
        assert diameter(g) == nx.diameter(to_nx(g))


class TestTriangles:
    def test_complete_graph(self):
        g = complete(6)
        assert triangle_count(g, 0, 1) == 4
        assert clustering_coefficient(g, 3) == 1

    def test_tree_and_four_cycle(self):
        t = random_tree(30, 3)
        assert all(triangle_count(t, x, y) == 0 for x, y in t.edges())
        c4 = cycle(4)
        assert triangle_count(c4, 0, 1) == 0
        assert clustering_coefficient(c4, 0) == 0

    def test_clustering_needs_degree_two(self):
        with pytest.raises(DegreeError):
            clustering_coefficient(path(3), 0)

    @given(small_graphs(max_n=8, connected=False))
    def test_against_networkx(self, g):
        h = to_nx(g)
        ref = nx.clustering(h)
        for x in range(g.vertex_count):
            if g.unweighted_degree(x) >= 2:
                assert clustering_coefficient(g, x) == Fraction(ref[x]).limit_denominator(1000)
        for x, y in g.edges():
            assert common_neighbors(g, x, y) == sorted(nx.common_neighbors(h, x, y))


class TestDegrees:
    def test_regular(self, k4):
        s = degree_summary(k4)
        assert set(s.d) == {3} and set(s.D) == {3} and set(s.D_w) == {3}

    def test_star(self):
        s = degree_summary(star(5))
        assert s.d[0] == 5 and s.d[1] == 1 and s.D[1] == 5

    def test_weighted_ratio(self):
        g = load_edge_list("a b 2\na c 1", weighted=True)
        s = degree_summary(g)
        a, b = g.index("a"), g.index("b")
        assert s.d[a] == 3
        assert s.D_w[b] == Fraction(3, 2)

    def test_isolated_vertex_rejected(self):
        with pytest.raises(IsolatedVertexError):
            degree_summary(load_edge_list("a b\nc"))


class TestComponents:
    def test_cases(self):
        assert len(connected_components(cycle(5))) == 1
        assert [len(b) for b in connected_components(load_edge_list("a b\nc d"))] == [2, 2]
        empty = Graph(["a", "b", "c"], [[], [], []])
        assert connected_components(empty) == [[0], [1], [2]]

    @given(small_graphs(max_n=8, connected=False))
    def test_partition_matches_networkx(self, g):
        ours = sorted(sorted(b) for b in connected_components(g))
        ref = sorted(sorted(c) for c in nx.connected_components(to_nx(g)))
        assert ours == ref


def test_label_order_is_numeric_then_lexicographic():
    labels = ["b", "10", "2", "a", "007", "7"]
    assert sorted(labels, key=label_key) == ["2", "007", "7", "10", "a", "b"]


def test_graph_pickles():
    import pickle

    g = complete(4)
    assert pickle.loads(pickle.dumps(g)) == g
