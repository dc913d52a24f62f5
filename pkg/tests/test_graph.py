from __future__ import annotations

import io

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import BOWTIE_EDGES, TRIANGLE_EDGES, random_connected_graph
from slicemod.errors import EdgeListParseError, ValidationError
from slicemod.graph import (Graph, aggregate_by_partition, check_dense_labels,
                            load_edge_list, serialize_edge_list)


class TestLoadEdgeList:
    def test_triangle(self):
        g = load_edge_list(TRIANGLE_EDGES)
        assert g.n == 3
        np.testing.assert_array_equal(g.strengths, [2.0, 2.0, 2.0])
        assert g.total_weight_2m == 6.0

    def test_bowtie_strengths(self):
        g = load_edge_list(BOWTIE_EDGES)
        assert g.n == 6
        np.testing.assert_array_equal(g.strengths, [2, 2, 3, 3, 2, 2])
        assert g.total_weight_2m == 14.0
        assert g.num_edges == 7

    def test_default_weight_is_one(self):
        g = load_edge_list("0 1\n")
        assert list(g.edges()) == [(0, 1, 1.0)]

    def test_duplicate_lines_sum_weights(self):
        g = load_edge_list("0 1 2\n1 0 3\n")
        assert list(g.edges()) == [(0, 1, 5.0)]
        assert g.total_weight_2m == 10.0

    def test_comments_and_blank_lines_skipped(self):
        g = load_edge_list("# header\n\n0 1 2.5\n  # indented comment\n")
        assert list(g.edges()) == [(0, 1, 2.5)]

    def test_zero_weight_line_defines_node_ids_only(self):
        g = load_edge_list("0 5 0\n1 2 1\n")
        assert g.n == 6
        assert list(g.edges()) == [(1, 2, 1.0)]

    def test_self_loop_counts_twice_in_strength(self):
        g = load_edge_list("1 1 2\n0 1 1\n")
        assert g.strengths[1] == 2 * 2 + 1
        assert g.total_weight_2m == 4 + 2
        assert g.matrix_csr()[1, 1] == 4.0
        assert (1, 1, 2.0) in list(g.edges())

    def test_accepts_file_object_and_iterable(self):
        assert load_edge_list(io.StringIO("0 1\n1 2\n")).n == 3
        assert load_edge_list(["0 1", "1 2"]).n == 3

    @pytest.mark.parametrize("text, lineno", [
        ("0 x\n", 1),
        ("0 1\n0\n", 2),
        ("0 1\n\n0 1 2 3\n", 3),
        ("0 1 nan\n", 1),
        ("0 1 inf\n", 1),
        ("-1 2\n", 1),
        ("1.5 2\n", 1),
    ])
    def test_malformed_line_reports_line_number(self, text, lineno):
        with pytest.raises(EdgeListParseError) as exc:
            load_edge_list(text)
        assert exc.value.lineno == lineno
        assert f"line {lineno}" in str(exc.value)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValidationError, match="negative weight"):
            load_edge_list("0 1 -2\n")


class TestGraphStructure:
    def test_symmetric_neighbors(self):
        g = load_edge_list("0 1 2.5\n1 2 0.5\n")
        nbrs0 = dict(zip(*g.neighbors(0)))
        nbrs1 = dict(zip(*g.neighbors(1)))
        assert nbrs0 == {1: 2.5}
        assert nbrs1 == {0: 2.5, 2: 0.5}

    def test_matrix_is_symmetric(self):
        rng = np.random.default_rng(0)
        g = random_connected_graph(rng, 9)
        m = g.matrix_csr()
        assert (m != m.T).nnz == 0

    def test_strengths_are_row_sums_of_matrix(self):
        rng = np.random.default_rng(1)
        g = random_connected_graph(rng, 8, self_loops=True)
        np.testing.assert_allclose(
            np.asarray(g.matrix_csr().sum(axis=1)).ravel(), g.strengths,
            rtol=0, atol=1e-12)

    @given(st.integers(0, 10_000))
    def test_serialize_round_trip_exact(self, seed):
        rng = np.random.default_rng(seed)
        g = random_connected_graph(rng, int(rng.integers(2, 9)),
                                   self_loops=True)
        again = load_edge_list(serialize_edge_list(g))
        assert g.allclose(again, atol=0.0)


class TestAggregateByPartition:
    def test_bowtie_two_blocks(self, bowtie):
        agg = aggregate_by_partition(bowtie, np.array([0, 0, 0, 1, 1, 1]))
        assert agg.n == 2
        assert agg.matrix_csr()[0, 0] == 6.0  # self-loop weight 3, doubled
        assert agg.matrix_csr()[0, 1] == 1.0
        assert agg.total_weight_2m == 14.0
        np.testing.assert_array_equal(agg.strengths, [7.0, 7.0])

    def test_identity_labels_reproduce_graph(self, bowtie):
        agg = aggregate_by_partition(bowtie, np.arange(6))
        assert bowtie.allclose(agg, atol=0.0)

    def test_triangle_all_in_one(self, triangle):
        agg = aggregate_by_partition(triangle, np.zeros(3, dtype=int))
        assert agg.n == 1
        assert agg.strengths[0] == 6.0
        assert agg.total_weight_2m == 6.0

    @given(st.integers(0, 10_000))
    def test_total_weight_preserved_exactly_for_dyadic_weights(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 10))
        edges = [(int(u), int(v), float(w))
                 for u, v, w in zip(rng.integers(0, n, 3 * n),
                                    rng.integers(0, n, 3 * n),
                                    rng.integers(1, 16, 3 * n) * 0.25)]
        edges.append((0, n - 1, 1.0))
        g = Graph.from_edges(edges, n=n)
        labels = rng.integers(0, max(1, n // 2), n)
        _, labels = np.unique(labels, return_inverse=True)
        agg = aggregate_by_partition(g, labels)
        assert agg.total_weight_2m == g.total_weight_2m
        # member strengths sum to the aggregated node strength
        for c in range(agg.n):
            assert agg.strengths[c] == pytest.approx(
                g.strengths[labels == c].sum(), abs=1e-12)

    def test_out_of_range_label_rejected(self, triangle):
        with pytest.raises(ValidationError):
            aggregate_by_partition(triangle, np.array([0, 1, 3]))

    def test_gap_in_labels_rejected(self, triangle):
        with pytest.raises(ValidationError, match="dense"):
            aggregate_by_partition(triangle, np.array([0, 2, 2]))


def test_check_dense_labels_returns_count():
    assert check_dense_labels(np.array([1, 0, 1, 2]), 4) == 3
    with pytest.raises(ValidationError):
        check_dense_labels(np.array([0, 1]), 3)
