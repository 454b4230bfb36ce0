"""Unit tests for graph core, statistics, connectivity and file formats."""

from fractions import Fraction

import numpy as np
import pytest

from src.core.exceptions import EdgeListFormatError, GraphError
from src.graphs import (
    Graph,
    codegree,
    codegree_stats,
    components,
    degree_stats,
    edge_connectivity,
    edge_count_between,
    girth,
    induced_edges,
    is_connected,
    is_triangle_free,
    vertex_connectivity,
)
from src.graphs.io import (
    format_edge_list,
    load_graph,
    pack_graph,
    parse_dot,
    parse_edge_list,
    to_dot,
    unpack_graph,
    validate_edge_list,
    write_edge_list,
    write_snapshot,
)
from src.graphs.statistics import max_codegree


class TestGraphCore:
    """Test construction, degrees and the loop convention."""

    def test_path(self, path3):
        assert path3.degrees.tolist() == [1, 2, 1]
        assert path3.m == 2
        assert path3.regular_degree is None

    def test_single_loop(self):
        g = Graph.from_edge_list(1, [(0, 0)])
        assert g.degree(0) == 1
        assert g.m == 1
        assert g.adjacency_matrix()[0, 0] == 1
        assert g.loop_count == 1

    def test_complete_graph(self, k4):
        assert k4.regular_degree == 3
        assert k4.m == 6

    def test_duplicate_edge_rejected(self):
        with pytest.raises(GraphError):
            Graph.from_edge_list(3, [(0, 1), (1, 0)])

    def test_out_of_range_rejected(self):
        with pytest.raises(GraphError):
            Graph.from_edge_list(2, [(0, 5)])

    def test_edges_are_canonical(self):
        g = Graph.from_edge_list(4, [(3, 1), (2, 0), (1, 0)])
        assert g.edges() == [(0, 1), (0, 2), (1, 3)]

    def test_graphs_are_immutable(self, k4):
        with pytest.raises(ValueError):
            k4.indices[0] = 3

    def test_equality_ignores_name(self, k4):
        assert k4 == Graph.complete(4, name="other")

    def test_complement(self, c5):
        complement = c5.complement()
        assert complement.regular_degree == 2
        assert complement.m == 5
        assert not complement.has_edge(0, 1)
        assert complement.has_edge(0, 2)

    def test_induced_subgraph(self, petersen):
        outer = petersen.induced_subgraph(range(5))
        assert outer.m == 5
        assert outer.regular_degree == 2

    def test_without_loops(self):
        g = Graph.from_edge_list(3, [(0, 0), (0, 1), (1, 2)])
        simple = g.without_loops()
        assert simple.m == 2
        assert not simple.has_loops

    def test_from_dense_round_trip(self, petersen):
        assert Graph.from_dense(petersen.adjacency_matrix()) == petersen


class TestEdgeCounts:
    """Test e(U, W) and e(U)."""

    def test_regular_full_sets(self, paley13):
        everything = range(13)
        assert edge_count_between(paley13, everything, everything) == 13 * 6

    def test_path_single_edge(self, path3):
        assert edge_count_between(path3, [0], [1]) == 1

    def test_overlap_counted_twice(self):
        k3 = Graph.complete(3)
        assert edge_count_between(k3, [0, 1], [0, 1]) == 2

    def test_loop_counted_once(self):
        g = Graph.from_edge_list(2, [(0, 0), (0, 1)])
        assert edge_count_between(g, [0], [0]) == 1
        assert induced_edges(g, [0, 1]) == 2

    def test_induced_edges(self, k4):
        assert induced_edges(k4, []) == 0
        assert induced_edges(k4, [0, 1, 2]) == 3

    def test_bad_vertex_set(self, k4):
        with pytest.raises(GraphError):
            induced_edges(k4, [7])

    def test_triangle_free(self, c5, k4, petersen):
        assert is_triangle_free(c5)
        assert is_triangle_free(petersen)
        assert not is_triangle_free(k4)
        assert not is_triangle_free(k4, vertices=[0])


class TestStatistics:
    """Test degree irregularity and codegrees."""

    def test_regular_irregularity_zero(self, petersen):
        stats = degree_stats(petersen)
        assert stats.irregularity == 0
        assert stats.is_regular

    def test_star_irregularity(self):
        star = Graph.from_edge_list(4, [(0, 1), (0, 2), (0, 3)])
        stats = degree_stats(star)
        assert stats.mean == Fraction(3, 2)
        assert stats.irregularity == 3

    def test_path_irregularity(self, path3):
        assert degree_stats(path3).irregularity == Fraction(2, 3)

    def test_complete_codegrees(self, k5):
        stats = codegree_stats(k5, 1.0)
        assert stats.max_codegree == stats.min_codegree == 3

    def test_pentagon_codegrees(self, c5):
        stats = codegree_stats(c5, 0.5)
        assert stats.edge_codegrees(c5).tolist() == [0]
        assert stats.non_edge_codegrees(c5).tolist() == [1]

    def test_paley_codegrees(self, paley13):
        stats = codegree_stats(paley13, 0.5)
        assert stats.edge_codegrees(paley13).tolist() == [2]
        assert stats.non_edge_codegrees(paley13).tolist() == [3]
        assert codegree(paley13, 0, 1) == 2
        assert max_codegree(paley13) == 3

    def test_codegree_table_cap(self, petersen):
        with pytest.raises(GraphError):
            codegree_stats(petersen, 0.3, cap=5)


class TestConnectivity:
    """Test exact connectivity, components and girth."""

    def test_vertex_connectivity(self, k4, c5, petersen):
        assert vertex_connectivity(k4) == 3
        assert vertex_connectivity(c5) == 2
        assert vertex_connectivity(petersen) == 3

    def test_edge_connectivity(self, c5, k4, paley13):
        assert edge_connectivity(c5) == 2
        assert edge_connectivity(k4) == 3
        assert edge_connectivity(paley13) == 6

    def test_components(self, k4):
        assert components(k4) == [[0, 1, 2, 3]]
        assert components(Graph.empty(3)) == [[0], [1], [2]]
        g = Graph.from_edge_list(4, [(0, 1), (1, 2)])
        assert sorted(len(c) for c in components(g)) == [1, 3]
        assert not is_connected(g)

    def test_connectivity_needs_loopless(self):
        g = Graph.from_edge_list(3, [(0, 0), (0, 1), (1, 2)])
        with pytest.raises(GraphError):
            vertex_connectivity(g)

    def test_girth(self, k4, c5, c6, petersen, path3):
        assert girth(k4) == 3
        assert girth(c5) == 5
        assert girth(c6) == 6
        assert girth(petersen) == 5
        assert girth(path3) is None


class TestEdgeListFormat:
    """Test the edge-list text format and its diagnostics."""

    def test_well_formed(self):
        g = parse_edge_list("3 2\n0 1\n1 2\n")
        assert g.m == 2
        assert g.n == 3

    def test_format_is_canonical(self, c5):
        text = format_edge_list(c5)
        assert text.splitlines()[0] == "5 5"
        assert parse_edge_list(text) == c5

    def test_duplicate_edge_line(self):
        with pytest.raises(EdgeListFormatError) as excinfo:
            parse_edge_list("3 1\n0 1\n0 1")
        assert excinfo.value.line == 3
        assert "duplicate" in str(excinfo.value)

    def test_out_of_range(self):
        with pytest.raises(EdgeListFormatError) as excinfo:
            parse_edge_list("2 1\n0 5")
        assert excinfo.value.line == 2
        assert "out of range" in str(excinfo.value)

    def test_ordering_violation(self):
        with pytest.raises(EdgeListFormatError) as excinfo:
            parse_edge_list("3 1\n2 1\n")
        assert "ordering" in str(excinfo.value)

    def test_header_mismatch(self):
        with pytest.raises(EdgeListFormatError) as excinfo:
            parse_edge_list("3 2\n0 1\n")
        assert excinfo.value.line == 1

    def test_malformed_token(self):
        with pytest.raises(EdgeListFormatError) as excinfo:
            parse_edge_list("3 1\n0 x\n")
        assert excinfo.value.line == 2
        assert excinfo.value.column == 3

    def test_unicode_digit_token(self):
        with pytest.raises(EdgeListFormatError) as excinfo:
            parse_edge_list("3 1\n0 \u00b2\n")
        assert excinfo.value.line == 2
        assert excinfo.value.column == 3

    def test_empty_file(self):
        with pytest.raises(EdgeListFormatError):
            parse_edge_list("")

    def test_files(self, tmp_path, petersen):
        path = write_edge_list(petersen, tmp_path / "petersen.el")
        loaded = load_graph(path)
        assert loaded == petersen
        assert loaded.name == "petersen"

    def test_missing_file(self, tmp_path):
        with pytest.raises(FileNotFoundError):
            load_graph(tmp_path / "missing.el")

    def test_validate_file_diagnostics(self, tmp_path):
        path = tmp_path / "dup.el"
        path.write_text("3 1\n0 1\n0 1", encoding="utf-8")
        with pytest.raises(EdgeListFormatError) as excinfo:
            validate_edge_list(path)
        assert excinfo.value.line == 3


class TestOtherFormats:
    """Test DOT export and msgpack snapshots."""

    def test_dot(self, c5):
        text = to_dot(c5)
        assert "0 -- 1;" in text
        assert parse_dot(text) == c5

    def test_snapshot(self, tmp_path, petersen):
        assert unpack_graph(pack_graph(petersen)) == petersen
        path = write_snapshot(petersen, tmp_path / "p.gpk")
        assert load_graph(path) == petersen

    def test_snapshot_format_checked(self):
        import msgpack

        with pytest.raises(GraphError):
            unpack_graph(msgpack.packb({"format": "other", "version": 1}))

    def test_isolated_vertices_survive_dot(self):
        g = Graph.from_edge_list(4, [(0, 1)])
        assert parse_dot(to_dot(g)).n == 4
        assert np.array_equal(parse_dot(to_dot(g)).degrees, [1, 1, 0, 0])
