import random

import pytest

from convopoly.convolution import IntegerSet, conv_diff, conv_sum
from convopoly.errors import InvalidArgumentError
from convopoly.walks import (
    Walk,
    WeightedDigraph,
    close_walk,
    edge_weights,
    encode_walk,
    encode_walk_double,
    walk_conv_cross,
    walk_conv_diff,
)


def random_subset(rng: random.Random, lo: int, hi: int) -> IntegerSet:
    return IntegerSet.from_iterable((i for i in range(lo, hi + 1) if rng.random() < 0.5), lo, hi)


class TestEncodeWalk:
    def test_worked_example(self, g2):
        w = encode_walk(IntegerSet((1, 3), 1, 5), 2, g2)
        assert w.vertices == (1, 2, 1, 0)

    def test_empty_set(self):
        w = encode_walk(IntegerSet((), 1, 4), 2)
        assert w.vertices == (0, 0, 0)

    def test_full_interval(self):
        w = encode_walk(IntegerSet.interval(1, 6), 2)
        assert w.vertices == (3,) * 5

    def test_too_short(self):
        with pytest.raises(InvalidArgumentError):
            encode_walk(IntegerSet((1,), 1, 1), 2)

    def test_wrong_ambient(self):
        with pytest.raises(InvalidArgumentError):
            encode_walk(IntegerSet((0,), 0, 4), 2)

    @pytest.mark.parametrize("seed", range(10))
    def test_walk_length(self, seed):
        rng = random.Random(seed)
        n = rng.randint(3, 30)
        w = encode_walk(random_subset(rng, 1, n), 3)
        assert len(w) == n - 2


class TestEncodeWalkDouble:
    def test_single_step(self, gg2):
        w = encode_walk_double(IntegerSet((0, 1), -2, 2), 2, gg2)
        # s = "01" over positions -1..0, t = "10" over positions 1..2
        assert w.vertices == (gg2.join(2, 1),)

    def test_empty_set(self):
        w = encode_walk_double(IntegerSet((), -4, 4), 2)
        assert w.vertices == (0, 0, 0)

    def test_far_left_position_is_ignored(self):
        with_end = encode_walk_double(IntegerSet((-4, 2), -4, 4), 2)
        without = encode_walk_double(IntegerSet((2,), -4, 4), 2)
        assert with_end.vertices == without.vertices

    @pytest.mark.parametrize("seed", range(20))
    def test_dropping_far_left_keeps_low_sums(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 3)
        n = rng.randint(d, 20)
        A = random_subset(rng, -n, n)
        dropped = IntegerSet.from_iterable((a for a in A if a != -n), -n, n)
        for j in range(1, d + 1):
            assert conv_sum(A, j) == conv_sum(dropped, j)
        assert encode_walk_double(A, d).vertices == encode_walk_double(dropped, d).vertices

    def test_wrong_ambient(self):
        with pytest.raises(InvalidArgumentError):
            encode_walk_double(IntegerSet((1,), 1, 4), 2)


class TestCloseWalk:
    def test_worked_example(self, g2):
        closed = close_walk(encode_walk(IntegerSet((1, 3), 1, 5), 2, g2))
        assert closed.vertices == (1, 2, 1, 0, 2, 1)

    def test_already_closed(self):
        w = encode_walk(IntegerSet.interval(1, 6), 2)
        assert close_walk(w) is w

    @pytest.mark.parametrize("seed", range(25))
    def test_adds_at_most_d_vertices(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 4)
        n = rng.randint(d, 40)
        w = encode_walk(random_subset(rng, 1, n), d)
        closed = close_walk(w)
        assert closed.closed
        assert closed.vertices[: len(w)] == w.vertices
        assert len(closed) - len(w) <= d

    @pytest.mark.parametrize("seed", range(25))
    def test_double_adds_at_most_d_vertices(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 3)
        n = rng.randint(d, 15)
        w = encode_walk_double(random_subset(rng, -n, n), d)
        closed = close_walk(w)
        assert closed.closed
        assert len(closed) - len(w) <= d


class TestEdgeWeights:
    def test_worked_example(self, g2):
        closed = close_walk(encode_walk(IntegerSet((1, 3), 1, 5), 2, g2))
        weights = edge_weights(closed)
        assert weights.weights == {(0, 2): 1, (1, 0): 1, (1, 2): 1, (2, 1): 2}
        assert weights.total_weight == 5

    def test_loop_walk(self, g2):
        weights = edge_weights(Walk(g2, (3,) * 7))
        assert weights.weights == {(3, 3): 6}

    def test_open_walk_rejected(self, g2):
        with pytest.raises(InvalidArgumentError):
            edge_weights(Walk(g2, (1, 2)))

    def test_missing_edge_rejected(self, g2):
        with pytest.raises(InvalidArgumentError):
            Walk(g2, (0, 3))

    def test_negative_weight_rejected(self, g2):
        with pytest.raises(InvalidArgumentError):
            WeightedDigraph(g2, {(0, 0): -1})

    def test_unbalanced_weights(self, g2):
        ok, message = WeightedDigraph(g2, {(0, 2): 1}).check_flow_conservation()
        assert not ok
        assert "Vertex" in message

    @pytest.mark.parametrize("seed", range(25))
    def test_conservation_and_total(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 4)
        n = rng.randint(d, 40)
        closed = close_walk(encode_walk(random_subset(rng, 1, n), d))
        weights = edge_weights(closed)
        assert weights.is_conserving()
        assert weights.total_weight == len(closed) - 1
        assert n - d + 1 <= len(closed) <= n + 1


class TestPerEdgeAccounting:
    @pytest.mark.parametrize("seed", range(20))
    def test_difference_counts(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 4)
        n = rng.randint(d, 40)
        A = random_subset(rng, 1, n)
        w = encode_walk(A, d)
        for j in range(1, d + 1):
            assert walk_conv_diff(w, j) == conv_diff(A, j)

    @pytest.mark.parametrize("seed", range(20))
    def test_sum_counts(self, seed):
        rng = random.Random(seed)
        d = rng.randint(1, 3)
        n = rng.randint(d, 20)
        A = random_subset(rng, -n, n)
        w = encode_walk_double(A, d)
        for j in range(1, d + 1):
            positive = sum(1 for a in range(1, j) if a in A and (j - a) in A)
            assert conv_sum(A, j) == 2 * walk_conv_cross(w, j) + positive

    def test_shift_out_of_range(self, g2):
        with pytest.raises(InvalidArgumentError):
            walk_conv_diff(Walk(g2, (0,)), 3)
