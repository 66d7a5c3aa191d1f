from fractions import Fraction

import pytest

from convopoly.convolution import conv_diff, cyclic_conv_diff
from convopoly.cycles import (
    CornerVector,
    corner_candidates,
    corner_count_bound,
    corner_vector,
    corner_vector_double,
    cycle_to_cyclic_set,
    cycle_to_pair_sets,
    distinct_corner_candidates,
    enumerate_cycles,
    iter_cycles,
)
from convopoly.debruijn import BitLabel, DoubleVertex, build_debruijn
from convopoly.decomposition import Cycle, CycleDecomposition
from convopoly.errors import CapExceededError, InvalidArgumentError
from convopoly.reconstruct import link_cycles, walk_to_set

from .conftest import D2_CANDIDATES


class TestCornerVector:
    def test_equality_uses_rational_coordinates(self):
        assert CornerVector((1, 1), 1) == CornerVector((2, 2), 2)
        assert hash(CornerVector((1, 1), 1)) == hash(CornerVector((2, 2), 2))
        assert CornerVector((1, 0), 2) != CornerVector((1, 0), 4)

    def test_from_fractions(self):
        corner = CornerVector.from_fractions([Fraction(1, 4), Fraction(1, 2)])
        assert corner.numerators == (1, 2)
        assert corner.denominator == 4

    def test_rejects_zero_denominator(self):
        with pytest.raises(InvalidArgumentError):
            CornerVector((0,), 0)

    def test_to_json_and_str(self):
        corner = CornerVector((1, 0), 4, Cycle((0, 2, 3, 1)))
        assert corner.to_json() == {"num": [1, 0], "den": 4, "cycle": [0, 2, 3, 1]}
        assert str(corner) == "(1/4, 0)"


class TestEnumerateCycles:
    def test_d1(self, g1):
        assert [c.vertices for c in enumerate_cycles(g1)] == [(0,), (1,), (0, 1)]

    def test_d2(self, g2):
        cycles = enumerate_cycles(g2)
        assert [c.vertices for c in cycles] == [
            (0,),
            (3,),
            (1, 2),
            (0, 2, 1),
            (1, 2, 3),
            (0, 2, 3, 1),
        ]

    def test_double_d1_is_complete_digraph(self, gg1):
        cycles = enumerate_cycles(gg1)
        # 4 loops, 6 two-cycles, 8 three-cycles, 6 four-cycles
        assert len(cycles) == 24
        assert [c.length for c in cycles] == sorted(c.length for c in cycles)

    @pytest.mark.parametrize("d", [3, 4])
    def test_hamiltonian_cycle_exists(self, d):
        g = build_debruijn(d)
        assert max(c.length for c in enumerate_cycles(g)) == 1 << d

    def test_cap(self, g2):
        with pytest.raises(CapExceededError):
            list(iter_cycles(g2, cap=5))

    def test_cap_from_environment(self, g2, monkeypatch):
        monkeypatch.setenv("CONVOPOLY_CAP_CYCLES", "2")
        with pytest.raises(CapExceededError):
            enumerate_cycles(g2)


class TestCornerVectors:
    def test_loop_set(self, g2):
        C = cycle_to_cyclic_set(Cycle((3,)), g2)
        assert C.modulus == 1
        assert C.sorted_members() == [0]

    def test_two_cycle_set(self, g2):
        C = cycle_to_cyclic_set(Cycle((1, 2)), g2)
        assert C.modulus == 2
        assert C.sorted_members() == [0]

    def test_d2_candidates_in_order(self, g2):
        corners = [corner_vector(c, g2).coords for c in enumerate_cycles(g2)]
        assert corners == D2_CANDIDATES

    def test_phase_invariance(self, g3):
        for c in enumerate_cycles(g3):
            reference = corner_vector(c, g3)
            for v in c.vertices:
                assert corner_vector(c.rotated_to(v), g3) == reference

    def test_per_edge_accounting(self, g3):
        for c in enumerate_cycles(g3):
            C = cycle_to_cyclic_set(c, g3)
            for j in range(1, 4):
                per_edge = sum(
                    1
                    for u, v in c.edges
                    if g3.appended_symbol(u, v) and (u >> (3 - j)) & 1
                )
                assert per_edge == cyclic_conv_diff(C, j)

    def test_periodic_sets_match_cyclic_counts(self, g3):
        k = 6
        for c in enumerate_cycles(g3):
            walk = link_cycles(CycleDecomposition([(c, k)]).terms, g3)
            B = walk_to_set(walk, k * c.length + 3)
            C = cycle_to_cyclic_set(c, g3)
            for j in range(1, 4):
                excess = conv_diff(B, j) - k * cyclic_conv_diff(C, j)
                assert 0 <= excess <= 3

    def test_all_corners_in_unit_cube(self, g3):
        assert all(corner_vector(c, g3).in_unit_cube() for c in enumerate_cycles(g3))


class TestDoubleCorners:
    def test_loops_at_constant_labels(self, gg2):
        zeros = DoubleVertex(BitLabel(2, 0), BitLabel(2, 0)).index
        ones = DoubleVertex(BitLabel(2, 3), BitLabel(2, 3)).index
        assert corner_vector_double(Cycle((zeros,)), gg2).coords == (0, 0)
        assert corner_vector_double(Cycle((ones,)), gg2).coords == (1, 1)

    def test_pair_sets_of_loop(self, gg1):
        forward, backward = cycle_to_pair_sets(Cycle((3,)), gg1)
        assert forward.sorted_members() == [0]
        assert backward.sorted_members() == [0]

    def test_d1_corners_in_unit_cube(self, gg1):
        corners = [corner_vector_double(c, gg1) for c in enumerate_cycles(gg1)]
        assert all(c.in_unit_cube() for c in corners)
        assert {c.coords for c in corners} >= {(0,), (1,)}


class TestCandidates:
    def test_raw_candidates_keep_duplicates(self):
        corners = corner_candidates(2, "diff")
        assert [c.coords for c in corners] == D2_CANDIDATES

    def test_distinct_candidates(self):
        corners = distinct_corner_candidates(2, "diff")
        assert [c.coords for c in corners] == sorted(set(D2_CANDIDATES))
        origin = corners[0]
        # the loop beats the three-cycle as provenance
        assert origin.cycle == Cycle((0,))

    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_count_bound(self, d):
        assert len(distinct_corner_candidates(d, "diff")) <= corner_count_bound(d, "diff")

    def test_bound_values(self):
        assert corner_count_bound(2, "diff") == 64
        assert corner_count_bound(1, "sum") == 16
