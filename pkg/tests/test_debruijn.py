import logging

import pytest

from convopoly.debruijn import (
    BitLabel,
    DeBruijnGraph,
    DoubleVertex,
    build_debruijn,
    build_double_debruijn,
    build_graph,
    vertex_conv_contribution,
)
from convopoly.errors import CapExceededError, InvalidArgumentError


class TestBitLabel:
    def test_string_round_trip(self):
        label = BitLabel.from_string("10110")
        assert label.mask == 13
        assert label.to_string() == "10110"

    def test_symbol_positions(self):
        label = BitLabel.from_string("100")
        assert [label.symbol(p) for p in (1, 2, 3)] == [1, 0, 0]

    def test_shift_append_and_prepend(self):
        label = BitLabel.from_string("10110")
        assert label.shift_append(1).to_string() == "01101"
        assert label.shift_prepend(0).to_string() == "01011"

    def test_rejects_non_binary(self):
        with pytest.raises(InvalidArgumentError):
            BitLabel.from_string("102")

    def test_rejects_oversized_mask(self):
        with pytest.raises(InvalidArgumentError):
            BitLabel(2, 4)


class TestVertexContribution:
    def test_contribution(self):
        assert vertex_conv_contribution(BitLabel.from_string("10"), 1) == 0
        assert vertex_conv_contribution(BitLabel.from_string("01"), 1) == 1
        assert vertex_conv_contribution(BitLabel.from_string("10"), 2) == 1
        assert vertex_conv_contribution(BitLabel.from_string("00"), 2) == 0

    def test_shift_out_of_range(self):
        with pytest.raises(InvalidArgumentError):
            vertex_conv_contribution(BitLabel.from_string("10"), 3)


class TestDeBruijnGraph:
    def test_d2_sizes(self, g2):
        assert g2.vertex_count == 4
        assert g2.edge_count == 8
        assert len(g2.edge_pairs()) == 8
        assert len(g2.edges) == 8

    def test_d1_edges(self, g1):
        assert g1.edge_pairs() == [(0, 0), (0, 1), (1, 0), (1, 1)]

    def test_d5_shift_edge(self):
        g = build_debruijn(5)
        u = BitLabel.from_string("10110").mask
        v = BitLabel.from_string("01101").mask
        assert g.has_edge(u, v)
        assert g.target(u, 1) == v
        assert g.appended_symbol(u, v) == 1

    @pytest.mark.parametrize("d", [1, 2, 3, 4])
    def test_structure(self, d):
        g = build_debruijn(d)
        assert g.is_strongly_connected()
        assert g.loops() == [0, (1 << d) - 1]
        assert set(g.in_degrees().values()) == {2}
        assert all(len(g.successors(v)) == 2 for v in g.vertices())

    def test_to_json(self, g1):
        doc = g1.to_json()
        assert doc["kind"] == "diff"
        assert doc["vertices"] == 2
        assert doc["edges"] == [[0, 0], [0, 1], [1, 0], [1, 1]]


class TestDoubleDeBruijnGraph:
    def test_d2_sizes(self, gg2):
        assert gg2.vertex_count == 16
        assert gg2.edge_count == 64
        assert len(gg2.edge_pairs()) == 64

    def test_d2_successors(self, gg2):
        # (s, t) = ("01", "10") moves to ("b0", "0c")
        v = DoubleVertex(BitLabel.from_string("01"), BitLabel.from_string("10")).index
        expected = sorted(
            DoubleVertex(BitLabel.from_string(s), BitLabel.from_string(t)).index
            for s in ("00", "10")
            for t in ("00", "01")
        )
        assert gg2.successors(v) == expected

    def test_d1_is_complete_with_loops(self, gg1):
        for v in gg1.vertices():
            assert gg1.successors(v) == [0, 1, 2, 3]
        ones = DoubleVertex(BitLabel(1, 1), BitLabel(1, 1)).index
        assert gg1.has_edge(ones, ones)

    def test_symbols_of_edge(self, gg2):
        v = gg2.join(0, 0)
        w = gg2.target(v, 1, 0)
        assert gg2.prepended_symbol(v, w) == 1
        assert gg2.appended_symbol(v, w) == 0

    def test_split_join_inverse(self, gg2):
        for v in gg2.vertices():
            assert gg2.join(*gg2.split(v)) == v
            assert gg2.vertex(v).index == v

    @pytest.mark.parametrize("d", [1, 2])
    def test_structure(self, d):
        g = build_double_debruijn(d)
        assert g.is_strongly_connected()
        assert set(g.in_degrees().values()) == {4}


class TestBuilders:
    def test_cap_exceeded(self):
        with pytest.raises(CapExceededError):
            build_debruijn(9)

    def test_double_cap_exceeded(self):
        with pytest.raises(CapExceededError):
            build_double_debruijn(5)

    def test_zero_d(self):
        with pytest.raises(InvalidArgumentError):
            build_debruijn(0)

    def test_raised_cap_warns(self, caplog):
        with caplog.at_level(logging.WARNING, logger="convopoly.debruijn"):
            g = build_debruijn(9, max_d=9)
        assert g.vertex_count == 512
        assert "cap raised" in caplog.text

    def test_cap_from_environment(self, monkeypatch):
        monkeypatch.setenv("CONVOPOLY_MAX_D", "3")
        with pytest.raises(CapExceededError):
            build_debruijn(4)

    def test_build_graph_dispatch(self):
        assert isinstance(build_graph(2, "diff"), DeBruijnGraph)
        assert build_graph(1, "sum").kind == "sum"

    def test_build_graph_unknown_kind(self):
        with pytest.raises(InvalidArgumentError):
            build_graph(2, "product")
