"""
Walk encodings of integer sets on G and G', walk closure, and the
integer edge weights of a closed walk.
"""

import logging
from collections import Counter
from dataclasses import dataclass, field

from .convolution import IntegerSet
from .debruijn import (
    DeBruijnGraph,
    DoubleDeBruijnGraph,
    ShiftGraph,
    build_debruijn,
    build_double_debruijn,
    vertex_conv_contribution,
)
from .errors import InvalidArgumentError, InvariantViolationError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Walk:
    """A vertex sequence v_1, ..., v_M along edges of a graph."""

    graph: ShiftGraph = field(compare=False, repr=False)
    vertices: tuple[int, ...]

    def __post_init__(self):
        if not self.vertices:
            raise InvalidArgumentError("A walk needs at least one vertex")
        for u, v in zip(self.vertices, self.vertices[1:]):
            if not self.graph.has_edge(u, v):
                raise InvalidArgumentError(f"No edge {u} -> {v} in the graph")

    @property
    def closed(self) -> bool:
        return self.vertices[0] == self.vertices[-1]

    @property
    def edge_count(self) -> int:
        return len(self.vertices) - 1

    def steps(self) -> list[tuple[int, int]]:
        return list(zip(self.vertices, self.vertices[1:]))

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass
class WeightedDigraph:
    """Nonnegative integer weights on the edges of a graph."""

    graph: ShiftGraph = field(repr=False)
    weights: dict[tuple[int, int], int] = field(default_factory=dict)

    def __post_init__(self):
        for (u, v), w in self.weights.items():
            if w < 0:
                raise InvalidArgumentError(f"Negative weight {w} on edge {u} -> {v}")
            if not self.graph.has_edge(u, v):
                raise InvalidArgumentError(f"No edge {u} -> {v} in the graph")
        self.weights = {e: w for e, w in sorted(self.weights.items()) if w > 0}

    def weight(self, u: int, v: int) -> int:
        return self.weights.get((u, v), 0)

    @property
    def total_weight(self) -> int:
        return sum(self.weights.values())

    def out_weight(self, v: int) -> int:
        return sum(w for (a, _), w in self.weights.items() if a == v)

    def in_weight(self, v: int) -> int:
        return sum(w for (_, b), w in self.weights.items() if b == v)

    def check_flow_conservation(self) -> tuple[bool, str]:
        """
        Check that every vertex balances in-weight and out-weight.

        Loops add the same amount to both sides, so they are included.

        Returns:
            Tuple of (is_valid, error_message)
        """
        balance: Counter = Counter()
        for (u, v), w in self.weights.items():
            balance[u] -= w
            balance[v] += w
        for v in sorted(balance):
            if balance[v] != 0:
                return False, f"Vertex {v} has in-weight minus out-weight {balance[v]}"
        return True, ""

    def is_conserving(self) -> bool:
        return self.check_flow_conservation()[0]


def _require_ambient(A: IntegerSet, lo: int, hi: int) -> None:
    if (A.ambient_lo, A.ambient_hi) != (lo, hi):
        raise InvalidArgumentError(
            f"Expected a set over [{lo}, {hi}], got [{A.ambient_lo}, {A.ambient_hi}]"
        )


def _mask_of(A: IntegerSet, first: int, d: int) -> int:
    """Mask of the window first, first+1, ..., first+d-1."""
    return sum(1 << p for p in range(d) if (first + p) in A)


def encode_walk(A: IntegerSet, d: int, graph: DeBruijnGraph | None = None) -> Walk:
    """
    Encode A over [1, N] as the walk of its length-d sliding windows on G.

    Args:
        A: Set whose ambient interval is [1, N]
        d: Window length
        graph: Optional prebuilt G

    Returns:
        Walk of N - d + 1 vertices

    Raises:
        InvalidArgumentError: If N < d or A is not over [1, N]
    """
    n = A.ambient_hi
    _require_ambient(A, 1, n)
    if n < d:
        raise InvalidArgumentError(f"N={n} is smaller than d={d}")
    graph = graph or build_debruijn(d)
    vertices = tuple(_mask_of(A, i, d) for i in range(1, n - d + 2))
    return Walk(graph, vertices)


def double_window(A: IntegerSet, d: int, k: int) -> tuple[int, int]:
    """
    Labels (s, t) of step k of the double walk.

    The s-window covers positions -d+2-k .. 1-k and the t-window covers
    positions k .. d+k-1, both read left to right.
    """
    return _mask_of(A, 2 - d - k, d), _mask_of(A, k, d)


def encode_walk_double(
    A: IntegerSet, d: int, graph: DoubleDeBruijnGraph | None = None
) -> Walk:
    """
    Encode A' over [-N, N] as a walk on G'.

    Position -N is never read; it cannot take part in a sum in 1..d.

    Raises:
        InvalidArgumentError: If N < d or A' is not over [-N, N]
    """
    n = A.ambient_hi
    _require_ambient(A, -n, n)
    if n < d:
        raise InvalidArgumentError(f"N={n} is smaller than d={d}")
    graph = graph or build_double_debruijn(d)
    vertices = []
    for k in range(1, n - d + 2):
        s, t = double_window(A, d, k)
        vertices.append(graph.join(s, t))
    return Walk(graph, tuple(vertices))


def close_walk(w: Walk) -> Walk:
    """
    Close a walk by feeding back the symbols of its first vertex.

    On G the symbols of v_1 are appended left to right. On G' the t-label
    of v_1 is appended left to right while its s-label is prepended right
    to left. Feeding stops at the first return to v_1, so at most d
    vertices are added.

    Raises:
        InvariantViolationError: If the walk fails to close within d steps
    """
    if w.closed:
        return w
    graph = w.graph
    d = graph.d
    first = w.vertices[0]
    current = w.vertices[-1]
    extra = []
    for p in range(d):
        if isinstance(graph, DoubleDeBruijnGraph):
            s1, t1 = graph.split(first)
            left = (s1 >> (d - 1 - p)) & 1
            right = (t1 >> p) & 1
            current = graph.target(current, left, right)
        else:
            current = graph.target(current, (first >> p) & 1)
        extra.append(current)
        if current == first:
            break
    if current != first:
        raise InvariantViolationError(f"Walk did not close within d={d} added vertices")
    logger.debug(f"Closed walk with {len(extra)} added vertices")
    return Walk(graph, w.vertices + tuple(extra))


def edge_weights(w: Walk) -> WeightedDigraph:
    """
    Count how often a closed walk crosses each edge.

    Raises:
        InvalidArgumentError: If the walk is not closed
    """
    if not w.closed:
        raise InvalidArgumentError("Edge weights need a closed walk")
    return WeightedDigraph(w.graph, dict(Counter(w.steps())))


def walk_conv_diff(w: Walk, j: int) -> int:
    """
    1_B*1_{-B}(j) for the set B spelled by a walk on G, by per-edge accounting.

    The count is the number of 1-pairs at distance j inside the start
    label plus one for every step that appends a 1 from a label holding
    a 1 at position d - j + 1.
    """
    graph = w.graph
    d = graph.d
    if not 1 <= j <= d:
        raise InvalidArgumentError(f"Shift {j} outside 1..{d}")
    start = w.vertices[0]
    total = sum(1 for p in range(j, d) if (start >> p) & 1 and (start >> (p - j)) & 1)
    for u, v in w.steps():
        if graph.appended_symbol(u, v) and vertex_conv_contribution(graph.label(u), j):
            total += 1
    return total


def walk_conv_cross(w: Walk, j: int) -> int:
    """
    Pairs (a, b) with a > 0 >= b and a + b = j in the set spelled by a G' walk.

    The start vertex covers positions -d+1..d. A step appending a 1 at
    position a pairs with the position j - a, which sits at offset j - 1
    of the new s-label.
    """
    graph = w.graph
    d = graph.d
    if not 1 <= j <= d:
        raise InvalidArgumentError(f"Shift {j} outside 1..{d}")
    s0, t0 = graph.split(w.vertices[0])
    total = sum(
        1 for p in range(j - 1, d) if (t0 >> p) & 1 and (s0 >> (j - p - 2 + d)) & 1
    )
    for u, v in w.steps():
        s, _ = graph.split(v)
        if graph.appended_symbol(u, v) and (s >> (j - 1)) & 1:
            total += 1
    return total
